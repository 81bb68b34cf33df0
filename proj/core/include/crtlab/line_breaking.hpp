#pragma once

#include <cstddef>
#include <vector>

#include "crtlab/rng.hpp"
#include "crtlab/theta.hpp"
#include "crtlab/trees.hpp"

namespace crtlab {

// Tree glued from segments (eta_{j-1}, eta_j], j = 1..k, eta_0 = 0. A position p
// in (eta_{j-1}, eta_j] lies on segment j; position 0 is the root. Segment
// j >= 2 hangs off the first arrival xi_{i,1} of the colour i of eta_{j-1}.
class LineBrokenTree {
public:
    LineBrokenTree() = default;
    // joins[i] is xi_{i,1} (or +inf when atom i has not arrived before eta_k);
    // colors[j] is the atom index of cutpoint eta[j].
    LineBrokenTree(ThetaParam theta, std::vector<double> joins, std::vector<double> eta, std::vector<int> colors);

    std::size_t k() const noexcept { return eta_.size(); }
    const ThetaParam& theta() const noexcept { return theta_; }
    const std::vector<double>& joins() const noexcept { return joins_; }
    const std::vector<double>& cutpoints() const noexcept { return eta_; }
    const std::vector<int>& colors() const noexcept { return colors_; }
    double cutpoint(std::size_t j) const { return eta_.at(j - 1); }  // 1-based, eta_j
    std::size_t segment_of(double p) const;                          // 1-based segment index
    double attach_position(std::size_t segment) const;               // for segment >= 2
    bool joined(std::size_t atom) const noexcept;

    double root_distance(double p) const;
    double distance(double a, double b) const;

    LabelledTree reduced_tree(std::size_t k) const;
    std::size_t branch_degree(std::size_t atom, std::size_t k) const;
    std::size_t branch_count_on_path(double a, double b, double eps) const;
    LineBrokenTree rescale(double c) const;

private:
    void check_position(double p) const;
    struct Interval {
        double lo, hi;
    };
    std::vector<Interval> geodesic(double a, double b) const;

    ThetaParam theta_;
    std::vector<double> joins_;
    std::vector<double> eta_;
    std::vector<int> colors_;
    std::vector<double> base_depth_;  // root distance of the base of each segment, index j-1
};

LineBrokenTree sample_line_breaking(const ThetaParam& theta, std::size_t k, Rng& rng);

}  // namespace crtlab
