#include "crtlab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "crtlab/errors.hpp"

namespace crtlab {

namespace {

std::vector<double> draw_distinct(std::size_t k, Rng& rng, const StepPath* avoid) {
    std::vector<double> t(k);
    for (auto& v : t) {
        do {
            v = rng.uniform_open();
        } while (avoid && avoid->jump_near(v));
    }
    std::sort(t.begin(), t.end());
    for (;;) {
        bool dup = false;
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t[i] == t[i - 1]) {
                dup = true;
                do {
                    t[i] = rng.uniform_open();
                } while (avoid && avoid->jump_near(t[i]));
            }
        }
        if (!dup) break;
        std::sort(t.begin(), t.end());
    }
    return t;
}

}  // namespace

MarkSet sample_marks(std::size_t k, Rng& rng) {
    if (k == 0) throw DomainError("sample_marks: k must be >= 1");
    return MarkSet(draw_distinct(k, rng, nullptr));
}

MarkSet sample_marks(std::size_t k, Rng& rng, const StepPath& avoid) {
    if (k == 0) throw DomainError("sample_marks: k must be >= 1");
    return MarkSet(draw_distinct(k, rng, &avoid));
}

StepPath make_bridge(const std::vector<double>& times, const std::vector<double>& sizes,
                     std::vector<std::size_t>* labels) {
    if (times.size() != sizes.size()) throw ValidationError("make_bridge: times and sizes differ in length");
    std::vector<std::size_t> order(times.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    std::vector<Jump> jumps;
    jumps.reserve(times.size());
    double total = 0.0;
    for (std::size_t i : order) {
        jumps.push_back({times[i], sizes[i]});
        total += sizes[i];
    }
    if (labels) *labels = std::move(order);
    return StepPath(1.0, -total, std::move(jumps), PathKind::bridge);
}

namespace {

StepPath sample_bridge(const std::vector<double>& sizes, Rng& rng, std::vector<std::size_t>* labels) {
    std::vector<double> t(sizes.size());
    for (;;) {
        for (auto& v : t) v = rng.uniform();
        std::vector<double> s(t);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) == s.end()) break;
    }
    return make_bridge(t, sizes, labels);
}

}  // namespace

StepPath sample_Y_theta(const ThetaParam& theta, Rng& rng, std::vector<std::size_t>* labels) {
    return sample_bridge(theta.atoms(), rng, labels);
}

void validate_weights(const std::vector<double>& p) {
    if (p.empty()) throw ValidationError("weights: empty weight vector");
    double s = 0.0;
    for (double v : p) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("weights: every weight must be positive");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw ValidationError("weights: must sum to 1 (got " + std::to_string(s) + ")");
}

StepPath sample_Y_n(const std::vector<double>& p, Rng& rng, std::vector<std::size_t>* labels) {
    validate_weights(p);
    return sample_bridge(p, rng, labels);
}

namespace {

VervaatSample to_excursion(const std::vector<double>& sizes, Rng& rng) {
    for (int attempt = 0; attempt < kVervaatRetries; ++attempt) {
        VervaatSample out;
        std::vector<std::size_t> time_labels;
        out.bridge = sample_bridge(sizes, rng, &time_labels);
        try {
            const InfimumPoint ip = infimum_point(out.bridge);
            out.excursion = vervaat(out.bridge, out.rho);
            const std::size_t n = time_labels.size();
            out.labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) out.labels[i] = time_labels[(i + ip.jump_index) % n];
            return out;
        } catch (const AmbiguityError&) {
        }
    }
    throw AmbiguityError("Vervaat transform: no unique infimum after " + std::to_string(kVervaatRetries) +
                         " attempts");
}

}  // namespace

VervaatSample sample_X_theta(const ThetaParam& theta, Rng& rng) {
    if (theta.empty()) throw DomainError("sample_X_theta: theta has no atoms");
    return to_excursion(theta.atoms(), rng);
}

VervaatSample sample_X_n(const std::vector<double>& p, Rng& rng) {
    validate_weights(p);
    return to_excursion(p, rng);
}

double surrogate_mean_count(double alpha, double x) {
    const StableConstants sc = stable_constants(alpha);
    return sc.c_alpha / alpha * std::pow(x, -alpha);
}

double surrogate_tail_l2(double alpha, double x) {
    const StableConstants sc = stable_constants(alpha);
    return sc.c_alpha * std::pow(x, 2.0 - alpha) / (2.0 - alpha);
}

ThetaParam sample_stable_jump_surrogate(double alpha, double delta, Rng& rng, std::size_t max_atoms) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("stable surrogate: alpha must lie in (1, 2)");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("stable surrogate: delta must lie in (0, 1]");
    if (max_atoms == 0) throw DomainError("stable surrogate: max_atoms must be positive");
    const StableConstants sc = stable_constants(alpha);
    double floor = delta;
    if (surrogate_mean_count(alpha, delta) > static_cast<double>(max_atoms))
        floor = std::pow(alpha * static_cast<double>(max_atoms) / sc.c_alpha, -1.0 / alpha);

    // Ranked points via the arrival times of a unit-rate Poisson process.
    std::vector<double> atoms;
    atoms.reserve(static_cast<std::size_t>(std::min(surrogate_mean_count(alpha, floor) * 1.1 + 16.0, 4e7)));
    const double scale = alpha / sc.c_alpha;
    const double inv = -1.0 / alpha;
    double arrival = 0.0;
    for (;;) {
        arrival += rng.exponential();
        const double x = std::pow(scale * arrival, inv);
        if (x < floor) break;
        atoms.push_back(x);
    }
    return ThetaParam(std::move(atoms), surrogate_tail_l2(alpha, floor), alpha);
}

}  // namespace crtlab
