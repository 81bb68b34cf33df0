#pragma once

#include <cstddef>
#include <vector>

#include "crtlab/rng.hpp"
#include "crtlab/step_path.hpp"
#include "crtlab/theta.hpp"

namespace crtlab {

inline constexpr int kVervaatRetries = 100;
inline constexpr std::size_t kSurrogateStorageCap = 2'000'000;

MarkSet sample_marks(std::size_t k, Rng& rng);
// Resamples any mark within kCollisionTol of a jump of `avoid`.
MarkSet sample_marks(std::size_t k, Rng& rng, const StepPath& avoid);

// Bridge on [0,1] with the given jump sizes at the given (distinct) times;
// drift is minus the sum of sizes taken in time order, so x(1) = 0 exactly.
// labels[i] is the input position of the i-th jump in time order.
StepPath make_bridge(const std::vector<double>& times, const std::vector<double>& sizes,
                     std::vector<std::size_t>* labels = nullptr);

StepPath sample_Y_theta(const ThetaParam& theta, Rng& rng, std::vector<std::size_t>* labels = nullptr);
StepPath sample_Y_n(const std::vector<double>& p, Rng& rng, std::vector<std::size_t>* labels = nullptr);
void validate_weights(const std::vector<double>& p);

struct VervaatSample {
    StepPath bridge;
    StepPath excursion;
    double rho = 0.0;
    // labels[i] = atom / weight index carried by the i-th jump of the excursion.
    std::vector<std::size_t> labels;
};

VervaatSample sample_X_theta(const ThetaParam& theta, Rng& rng);
VervaatSample sample_X_n(const std::vector<double>& p, Rng& rng);

// Ranked atoms of a Poisson process with intensity c_alpha x^{-1-alpha} dx on
// [delta, inf). If the expected count exceeds max_atoms, atoms are stored only
// above a raised floor and the band below it is folded into tail_l2.
ThetaParam sample_stable_jump_surrogate(double alpha, double delta, Rng& rng,
                                        std::size_t max_atoms = kSurrogateStorageCap);

// Expected number of atoms above x: (c_alpha / alpha) x^{-alpha}.
double surrogate_mean_count(double alpha, double x);
// Mean of the sum of squares of atoms below x: c_alpha x^{2-alpha} / (2-alpha).
double surrogate_tail_l2(double alpha, double x);

}  // namespace crtlab
