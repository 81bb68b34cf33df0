#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "crtlab/step_path.hpp"
#include "crtlab/theta.hpp"
#include "crtlab/trees.hpp"

namespace crtlab {

class Normalizer {
public:
    enum class Kind { stable, icrt };

    static Normalizer stable(double alpha);
    static Normalizer icrt(ThetaParam theta);

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    const ThetaParam& theta() const noexcept { return theta_; }

    // k^{1/alpha} or Psi^{-1}(k)
    double degree_norm(double k) const;
    // (Gamma(2-alpha)/alpha) eps^{alpha-1} or 1/gamma(eps); +inf when gamma(eps) = 0
    double distance_norm(double eps) const;

private:
    Kind kind_ = Kind::stable;
    double alpha_ = 1.5;
    ThetaParam theta_;
};

struct Trajectory {
    double value = 0.0;
    std::vector<std::pair<double, double>> points;  // (k or eps, estimate)
};

Trajectory estimate_local_time(const std::vector<std::pair<double, double>>& degree_sequence, const Normalizer& norm);
double estimate_distance(double branch_count, double eps, const Normalizer& norm);
// Evaluates estimate_distance along a decreasing eps grid.
Trajectory distance_trajectory(const std::vector<std::pair<double, double>>& eps_counts, const Normalizer& norm);

// Geometric grid (factor 2) from theta_1 down to theta_N.
std::vector<double> eps_grid(const ThetaParam& theta);

// Most recent common ancestor time of t1, t2 on an excursion path.
double mrca_time(const StepPath& path, double t1, double t2);
double root_distance_estimate(const StepPath& path, double t, double eps, const Normalizer& norm);
double path_distance_estimate(const StepPath& path, double t1, double t2, double eps, const Normalizer& norm);

std::map<int, double> empirical_mass(const std::vector<int>& leaves);
std::map<int, double> empirical_mass(const LabelledTree& tree);

}  // namespace crtlab
