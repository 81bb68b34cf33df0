#include "crtlab/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "crtlab/errors.hpp"

namespace crtlab {

Normalizer Normalizer::stable(double alpha) {
    stable_constants(alpha);
    Normalizer n;
    n.kind_ = Kind::stable;
    n.alpha_ = alpha;
    return n;
}

Normalizer Normalizer::icrt(ThetaParam theta) {
    if (theta.empty()) throw DomainError("Normalizer::icrt: theta has no atoms");
    Normalizer n;
    n.kind_ = Kind::icrt;
    n.theta_ = std::move(theta);
    return n;
}

double Normalizer::degree_norm(double k) const {
    if (!(k > 0.0)) throw DomainError("degree_norm: k must be positive");
    if (kind_ == Kind::stable) return std::pow(k, 1.0 / alpha_);
    return psi_inv(theta_, k);
}

double Normalizer::distance_norm(double eps) const {
    if (!(eps > 0.0)) throw DomainError("distance_norm: eps must be positive");
    if (kind_ == Kind::stable) return stable_constants(alpha_).height_prefactor * std::pow(eps, alpha_ - 1.0);
    const double g = gamma(theta_, eps).value;
    return g > 0.0 ? 1.0 / g : kInfinity;
}

Trajectory estimate_local_time(const std::vector<std::pair<double, double>>& seq, const Normalizer& norm) {
    if (seq.empty()) throw ValidationError("estimate_local_time: empty degree sequence");
    Trajectory tr;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0 && !(seq[i].first > seq[i - 1].first))
            throw ValidationError("estimate_local_time: k values must increase");
        const double est = seq[i].second == 0.0 ? 0.0 : seq[i].second / norm.degree_norm(seq[i].first);
        tr.points.emplace_back(seq[i].first, est);
    }
    tr.value = tr.points.back().second;
    return tr;
}

double estimate_distance(double count, double eps, const Normalizer& norm) {
    if (!(eps > 0.0)) throw DomainError("estimate_distance: eps must be positive");
    if (count < 0.0) throw ValidationError("estimate_distance: negative count");
    if (count == 0.0) return 0.0;
    return count * norm.distance_norm(eps);
}

Trajectory distance_trajectory(const std::vector<std::pair<double, double>>& eps_counts, const Normalizer& norm) {
    if (eps_counts.empty()) throw ValidationError("distance_trajectory: empty input");
    Trajectory tr;
    for (const auto& [eps, c] : eps_counts) tr.points.emplace_back(eps, estimate_distance(c, eps, norm));
    tr.value = tr.points.back().second;
    return tr;
}

std::vector<double> eps_grid(const ThetaParam& theta) {
    std::vector<double> g;
    if (theta.empty()) return g;
    const double lo = theta.atoms().back();
    for (double e = theta[0]; e >= lo; e /= 2.0) g.push_back(e);
    if (g.back() != lo) g.push_back(lo);
    return g;
}

double mrca_time(const StepPath& x, double t1, double t2) {
    const double a = std::min(t1, t2), b = std::max(t1, t2);
    const double r = x.running_min(a, b);
    const double s = x.tau(a, r);
    if (!std::isfinite(s)) throw DomainError("mrca_time: no common ancestor");
    return s;
}

double root_distance_estimate(const StepPath& x, double t, double eps, const Normalizer& norm) {
    const auto anc = record_ancestor_indices(x, t, eps);
    return estimate_distance(static_cast<double>(anc.size()), eps, norm);
}

double path_distance_estimate(const StepPath& x, double t1, double t2, double eps, const Normalizer& norm) {
    if (x.kind() != PathKind::excursion) throw DomainError("path_distance_estimate: path must be excursion-type");
    if (!(eps > 0.0)) throw DomainError("path_distance_estimate: eps must be positive");
    if (t1 == t2) return 0.0;
    const double b = mrca_time(x, t1, t2);
    const double n1 = static_cast<double>(record_ancestor_indices(x, t1, eps).size());
    const double n2 = static_cast<double>(record_ancestor_indices(x, t2, eps).size());
    const double nb = static_cast<double>(record_ancestor_indices(x, b, eps).size());
    return estimate_distance(n1 + n2 - 2.0 * nb, eps, norm);
}

std::map<int, double> empirical_mass(const std::vector<int>& leaves) {
    if (leaves.empty()) throw ValidationError("empirical_mass: no leaves");
    std::map<int, double> w;
    for (int l : leaves) w[l] = 0.0;
    for (auto& [l, v] : w) v = 1.0 / static_cast<double>(w.size());
    return w;
}

std::map<int, double> empirical_mass(const LabelledTree& t) {
    std::vector<int> leaves;
    for (std::size_t l = 1; l <= t.k(); ++l) leaves.push_back(static_cast<int>(l));
    return empirical_mass(leaves);
}

}  // namespace crtlab
