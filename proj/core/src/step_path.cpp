#include "crtlab/step_path.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "crtlab/errors.hpp"

namespace crtlab {

const char* to_string(PathKind k) noexcept {
    switch (k) {
        case PathKind::bridge: return "bridge";
        case PathKind::excursion: return "excursion";
        default: return "generic";
    }
}

PathKind path_kind_from_string(const char* s) {
    if (std::strcmp(s, "bridge") == 0) return PathKind::bridge;
    if (std::strcmp(s, "excursion") == 0) return PathKind::excursion;
    if (std::strcmp(s, "generic") == 0) return PathKind::generic;
    throw ValidationError(std::string("unknown path kind '") + s + "'");
}

StepPath::StepPath(double domain_end, double drift, std::vector<Jump> jumps, PathKind kind)
    : T_(domain_end), drift_(drift), kind_(kind), jumps_(std::move(jumps)) {
    if (!std::isfinite(T_) || T_ < 0.0) throw ValidationError("StepPath: domain_end must be finite and >= 0");
    if (!std::isfinite(drift_)) throw ValidationError("StepPath: drift must be finite");
    cum_.resize(jumps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        const Jump& j = jumps_[i];
        if (!(j.time >= 0.0) || !(j.time < T_))
            throw ValidationError("StepPath: jump time " + std::to_string(j.time) + " outside [0, T)");
        if (i > 0 && !(j.time > jumps_[i - 1].time))
            throw ValidationError("StepPath: jump times must be strictly increasing");
        if (!(j.size > 0.0) || !std::isfinite(j.size))
            throw ValidationError("StepPath: jump sizes must be positive and finite");
        acc += j.size;
        cum_[i] = acc;
    }
    const double scale = std::max(1.0, acc);
    if (kind_ == PathKind::bridge || kind_ == PathKind::excursion) {
        const double end = drift_ * T_ + acc;
        if (std::fabs(end) > kEndpointTol * scale)
            throw ValidationError(std::string("StepPath: ") + to_string(kind_) + " path must end at 0 (got " +
                                  std::to_string(end) + ")");
    }
    if (kind_ == PathKind::excursion) {
        for (std::size_t i = 0; i < jumps_.size(); ++i)
            if (before(i) < -kEndpointTol * scale)
                throw ValidationError("StepPath: excursion path goes negative before jump " + std::to_string(i));
        if (jumps_.empty() && T_ > 0.0 && drift_ != 0.0)
            throw ValidationError("StepPath: excursion without jumps must be constant zero");
    }
}

void StepPath::check_time(double t, const char* op) const {
    if (!(t >= 0.0 && t <= T_))
        throw DomainError(std::string(op) + ": time " + std::to_string(t) + " outside [0, T]");
}

double StepPath::before(std::size_t i) const noexcept {
    return drift_ * jumps_[i].time + (i == 0 ? 0.0 : cum_[i - 1]);
}

double StepPath::after(std::size_t i) const noexcept { return drift_ * jumps_[i].time + cum_[i]; }

std::size_t StepPath::count_upto(double t) const noexcept {
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), t,
                               [](double v, const Jump& j) { return v < j.time; });
    return static_cast<std::size_t>(it - jumps_.begin());
}

std::size_t StepPath::count_before(double t) const noexcept {
    auto it = std::lower_bound(jumps_.begin(), jumps_.end(), t,
                               [](const Jump& j, double v) { return j.time < v; });
    return static_cast<std::size_t>(it - jumps_.begin());
}

std::optional<std::size_t> StepPath::jump_at(double t) const noexcept {
    std::size_t i = count_before(t);
    if (i < jumps_.size() && jumps_[i].time == t) return i;
    return std::nullopt;
}

std::optional<std::size_t> StepPath::jump_near(double t, double tol) const noexcept {
    std::size_t i = count_before(t);
    if (i < jumps_.size() && jumps_[i].time - t <= tol) return i;
    if (i > 0 && t - jumps_[i - 1].time <= tol) return i - 1;
    return std::nullopt;
}

double StepPath::eval(double t) const {
    check_time(t, "eval");
    const std::size_t n = count_upto(t);
    double v = drift_ * t + (n == 0 ? 0.0 : cum_[n - 1]);
    if (kind_ == PathKind::excursion && t == T_ && std::fabs(v) <= kEndpointTol) v = 0.0;
    return v;
}

double StepPath::eval_left(double t) const {
    check_time(t, "eval_left");
    if (t == 0.0) return 0.0;
    const std::size_t n = count_before(t);
    double v = drift_ * t + (n == 0 ? 0.0 : cum_[n - 1]);
    if (kind_ == PathKind::excursion && t == T_ && std::fabs(v) <= kEndpointTol) v = 0.0;
    return v;
}

double StepPath::running_min(double s, double t) const {
    check_time(s, "running_min");
    check_time(t, "running_min");
    if (s > t) throw DomainError("running_min: reversed interval");
    double m = std::min(eval(s), eval(t));
    const std::size_t lo = count_upto(s);
    const std::size_t hi = count_upto(t);
    for (std::size_t i = lo; i < hi; ++i) m = std::min(m, before(i));
    return m;
}

double StepPath::tau(double t, double r) const {
    check_time(t, "tau");
    if (eval(t) < r) return kInfinity;
    for (std::size_t i = count_upto(t); i-- > 0;)
        if (before(i) < r) return jumps_[i].time;
    return 0.0;
}

double StepPath::first_passage(double from, double level, bool inclusive) const {
    double s0 = from;
    double v0 = eval(from);
    std::size_t i = count_upto(from);
    for (;;) {
        const double e = i < jumps_.size() ? jumps_[i].time : T_;
        if (inclusive ? v0 <= level : v0 < level) return s0;
        if (drift_ < 0.0) {
            const double hit = s0 + (v0 - level) / (-drift_);
            if (inclusive ? hit <= e : hit < e) return std::min(hit, T_);
        }
        if (i >= jumps_.size()) return T_;
        s0 = jumps_[i].time;
        v0 = after(i);
        ++i;
    }
}

double StepPath::sigma(double s) const {
    if (!(s >= 0.0) || !(s < T_)) throw DomainError("sigma: s must lie in [0, T)");
    return first_passage(s, eval_left(s), false);
}

std::pair<double, double> StepPath::g_d(double t) const {
    check_time(t, "g_d");
    const double level = std::min(running_min(0.0, t), eval_left(t));
    double g = 0.0;
    if (eval_left(t) <= level) {
        g = t;
    } else {
        for (std::size_t i = count_upto(t); i-- > 0;) {
            if (before(i) <= level) {
                g = jumps_[i].time;
                break;
            }
        }
    }
    double d = T_;
    if (t < T_) d = first_passage(t, level, true);
    return {g, d};
}

double StepPath::total_size() const noexcept { return cum_.empty() ? 0.0 : cum_.back(); }

std::vector<double> StepPath::sizes() const {
    std::vector<double> out;
    out.reserve(jumps_.size());
    for (const auto& j : jumps_) out.push_back(j.size);
    return out;
}

InfimumPoint infimum_point(const StepPath& y) {
    const std::size_t n = y.jump_count();
    const double T = y.domain_end();
    const double scale = std::max(1.0, y.total_size());
    const double end = y.drift() * T + y.total_size();
    if (std::fabs(end) > kEndpointTol * scale) throw DomainError("infimum_point: path is not bridge-type");
    if (n == 0) throw AmbiguityError("infimum_point: path without jumps has no unique infimum");

    std::size_t arg = 0;
    double best = y.before(0);
    for (std::size_t i = 1; i < n; ++i) {
        const double v = y.before(i);
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    if (end < best) {
        best = end;
        arg = n;
    }
    if (arg == n) {
        if (y.time(0) != 0.0) throw AmbiguityError("infimum_point: minimum at T without a jump at 0");
        arg = 0;
        best = 0.0;
    }
    const bool at_origin = y.time(arg) == 0.0;
    const double tol = kTieTol * scale;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == arg) continue;
        if (std::fabs(y.before(i) - best) <= tol)
            throw AmbiguityError("infimum_point: tie between jump times " + std::to_string(y.time(arg)) + " and " +
                                 std::to_string(y.time(i)));
    }
    if (!at_origin && std::fabs(end - best) <= tol)
        throw AmbiguityError("infimum_point: tie between an interior minimum and x(T)");
    return {y.time(arg), best, arg};
}

StepPath vervaat(const StepPath& y, double& rho_out) {
    const InfimumPoint ip = infimum_point(y);
    const double T = y.domain_end();
    const double rho = ip.rho;
    const std::size_t n = y.jump_count();
    std::vector<Jump> out;
    out.reserve(n);
    for (std::size_t i = ip.jump_index; i < n; ++i) out.push_back({y.time(i) - rho, y.size(i)});
    for (std::size_t i = 0; i < ip.jump_index; ++i) out.push_back({(y.time(i) - rho) + T, y.size(i)});
    rho_out = rho;
    return StepPath(T, y.drift(), std::move(out), PathKind::excursion);
}

StepPath vervaat(const StepPath& y) {
    double rho = 0.0;
    return vervaat(y, rho);
}

StepPath vervaat_inverse(const StepPath& x, double rho) {
    const double T = x.domain_end();
    if (!(rho >= 0.0) || !(rho < T)) throw DomainError("vervaat_inverse: rho must lie in [0, T)");
    const double shift = T - rho;
    const std::size_t n = x.jump_count();
    const std::size_t split = x.count_before(shift);
    std::vector<Jump> out;
    out.reserve(n);
    for (std::size_t i = split; i < n; ++i) out.push_back({x.time(i) - shift, x.size(i)});
    for (std::size_t i = 0; i < split; ++i) out.push_back({(x.time(i) - shift) + T, x.size(i)});
    return StepPath(T, x.drift(), std::move(out), PathKind::bridge);
}

std::vector<std::size_t> record_ancestor_indices(const StepPath& x, double t, double eps) {
    if (eps < 0.0) throw DomainError("record_ancestors: eps must be >= 0");
    double m = x.eval(t);
    std::vector<std::size_t> out;
    for (std::size_t i = x.count_upto(t); i-- > 0;) {
        const double b = x.before(i);
        if (b < m) {
            if (x.size(i) > eps) out.push_back(i);
            m = b;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<double> record_ancestors(const StepPath& x, double t, double eps) {
    std::vector<double> out;
    for (std::size_t i : record_ancestor_indices(x, t, eps)) out.push_back(x.time(i));
    return out;
}

MarkSet::MarkSet(std::vector<double> times) : times_(std::move(times)) {
    std::sort(times_.begin(), times_.end());
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] > 0.0) || !std::isfinite(times_[i])) throw ValidationError("MarkSet: marks must be positive");
        if (i > 0 && times_[i] == times_[i - 1]) throw ValidationError("MarkSet: marks must be distinct");
    }
}

bool MarkSet::collides_with(const StepPath& path, double tol) const noexcept {
    for (double t : times_)
        if (path.jump_near(t, tol)) return true;
    return false;
}

void MarkSet::check_against(const StepPath& path, double tol) const {
    for (double t : times_) {
        if (!(t < path.domain_end())) throw PreconditionError("mark " + std::to_string(t) + " outside (0, T)");
        if (auto j = path.jump_near(t, tol))
            throw PreconditionError("mark " + std::to_string(t) + " collides with jump time " +
                                    std::to_string(path.time(*j)));
    }
}

}  // namespace crtlab
