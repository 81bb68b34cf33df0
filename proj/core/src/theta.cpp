#include "crtlab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "crtlab/errors.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/samplers.hpp"

namespace crtlab {

ThetaParam::ThetaParam(std::vector<double> atoms, double tail_l2, std::optional<double> nominal_alpha)
    : atoms_(std::move(atoms)), tail_l2_(tail_l2), nominal_alpha_(nominal_alpha) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i] > 0.0) || !std::isfinite(atoms_[i]))
            throw ValidationError("ThetaParam: atoms must be positive and finite");
        if (i > 0 && atoms_[i] > atoms_[i - 1]) throw ValidationError("ThetaParam: atoms must be non-increasing");
    }
    if (!(tail_l2_ >= 0.0) || !std::isfinite(tail_l2_)) throw ValidationError("ThetaParam: tail_l2 must be >= 0");
    if (nominal_alpha_ && !(*nominal_alpha_ > 1.0 && *nominal_alpha_ < 2.0))
        throw ValidationError("ThetaParam: nominal_alpha must lie in (1, 2)");
}

double ThetaParam::sum() const noexcept { return std::accumulate(atoms_.begin(), atoms_.end(), 0.0); }

double ThetaParam::l2_norm() const noexcept {
    double s = 0.0;
    for (double a : atoms_) s += a * a;
    return std::sqrt(s);
}

ThetaParam ThetaParam::scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("ThetaParam::scaled: factor must be positive");
    std::vector<double> a(atoms_);
    for (double& v : a) v *= c;
    return ThetaParam(std::move(a), tail_l2_ * c * c, nominal_alpha_);
}

double gamma_function(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_function: argument must be positive");
    return std::tgamma(x);
}

double varphi(double x) noexcept {
    if (std::fabs(x) < 1e-2) {
        // x^2/2 - x^3/6 + x^4/24 - x^5/120 + x^6/720 - x^7/5040
        const double x2 = x * x;
        return x2 * (0.5 + x * (-1.0 / 6 + x * (1.0 / 24 + x * (-1.0 / 120 + x * (1.0 / 720 - x / 5040)))));
    }
    return std::expm1(-x) + x;
}

Bracketed psi(const ThetaParam& theta, double t) {
    if (!(t >= 0.0)) throw DomainError("psi: t must be >= 0");
    double s = 0.0;
    for (double a : theta.atoms()) s += varphi(a * t);
    return {s, theta.tail_l2() * t * t / 2.0};
}

double varphi_sum(const ThetaParam& theta, double t) { return psi(theta, t).value; }

double psi_derivative(const ThetaParam& theta, double t) {
    if (!(t >= 0.0)) throw DomainError("psi_derivative: t must be >= 0");
    double s = 0.0;
    for (double a : theta.atoms()) s += -a * std::expm1(-a * t);
    return s;
}

double psi_inv(const ThetaParam& theta, double y) {
    if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("psi_inv: y must be finite and >= 0");
    if (theta.empty()) throw DomainError("psi_inv: theta has no atoms");
    if (y == 0.0) return 0.0;
    const double tol = 1e-10 * std::max(1.0, y);
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (psi(theta, hi).value < y) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 1100) throw DomainError("psi_inv: bracketing failed");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi)) return mid;
        const double v = psi(theta, mid).value;
        if (std::fabs(v - y) <= tol) return mid;
        if (v < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

GammaValue gamma(const ThetaParam& theta, double eps) {
    if (!(eps > 0.0)) throw DomainError("gamma: eps must be positive");
    double s = 0.0;
    for (double a : theta.atoms()) {
        if (a > eps)
            s += a;
        else
            break;
    }
    const bool truncated = !theta.exactly_finite() && (theta.empty() || eps < theta.atoms().back());
    return {s, truncated};
}

StableConstants stable_constants(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("stable_constants: alpha must lie in (1, 2)");
    const double g = gamma_function(2.0 - alpha);
    StableConstants c;
    c.alpha = alpha;
    c.gamma_limit = alpha / g;
    c.c_alpha = (alpha - 1.0) * c.gamma_limit;
    c.height_prefactor = g / alpha;
    return c;
}

AsymptoticReport check_asymptotics(const ThetaParam& theta, const std::vector<double>& t_grid,
                                   const std::vector<double>& eps_grid) {
    if (!theta.nominal_alpha()) throw PreconditionError("check_asymptotics: theta has no nominal_alpha");
    const double alpha = *theta.nominal_alpha();
    const StableConstants sc = stable_constants(alpha);
    AsymptoticReport rep;
    rep.alpha = alpha;
    for (double t : t_grid) {
        const Bracketed p = psi(theta, t);
        AsymptoticRow row;
        row.t = t;
        row.psi_ratio = p.value / std::pow(t, alpha);
        row.psi_ratio_hi = (p.value + p.tail_bound) / std::pow(t, alpha);
        row.psi_inv_ratio = psi_inv(theta, t) / std::pow(t, 1.0 / alpha);
        rep.max_deviation = std::max({rep.max_deviation, std::fabs(row.psi_ratio - 1.0),
                                      std::fabs(row.psi_inv_ratio - 1.0)});
        rep.t_rows.push_back(row);
    }
    for (double e : eps_grid) {
        const GammaValue g = gamma(theta, e);
        AsymptoticEpsRow row;
        row.eps = e;
        row.gamma_ratio = std::pow(e, alpha - 1.0) * g.value / sc.gamma_limit;
        row.truncated = g.truncated;
        rep.max_deviation = std::max(rep.max_deviation, std::fabs(row.gamma_ratio - 1.0));
        rep.eps_rows.push_back(row);
    }
    return rep;
}

namespace {

std::vector<double> split_numbers(const std::string& body, const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("theta spec '" + spec + "': bad number '" + item + "'");
        }
    }
    return out;
}

std::size_t as_count(double v, const std::string& spec) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e8)
        throw ValidationError("theta spec '" + spec + "': N must be a positive integer");
    return static_cast<std::size_t>(v);
}

}  // namespace

ThetaParam parse_theta_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ValidationError("theta spec '" + spec + "': expected kind:args");
    const std::string kind = spec.substr(0, colon);
    const std::vector<double> a = split_numbers(spec.substr(colon + 1), spec);
    if (kind == "geometric") {
        if (a.size() != 2 || !(a[0] > 0.0 && a[0] <= 1.0))
            throw ValidationError("theta spec '" + spec + "': expected geometric:r,N with 0<r<=1");
        const std::size_t N = as_count(a[1], spec);
        std::vector<double> v(N);
        double x = 1.0;
        for (std::size_t i = 0; i < N; ++i, x *= a[0]) v[i] = x;
        return ThetaParam(std::move(v));
    }
    if (kind == "polynomial") {
        if (a.size() != 3 || !(a[0] > 0.0) || !(a[1] >= 0.0))
            throw ValidationError("theta spec '" + spec + "': expected polynomial:c,p,N with c>0, p>=0");
        const std::size_t N = as_count(a[2], spec);
        std::vector<double> v(N);
        for (std::size_t i = 0; i < N; ++i) v[i] = a[0] * std::pow(static_cast<double>(i + 1), -a[1]);
        return ThetaParam(std::move(v));
    }
    if (kind == "stable") {
        if (a.size() != 3 || !(a[2] >= 0.0) || a[2] != std::floor(a[2]))
            throw ValidationError("theta spec '" + spec + "': expected stable:alpha,delta,seed");
        Rng rng(static_cast<std::uint64_t>(a[2]), 0);
        return sample_stable_jump_surrogate(a[0], a[1], rng);
    }
    throw ValidationError("theta spec '" + spec + "': unknown kind '" + kind + "'");
}

}  // namespace crtlab
