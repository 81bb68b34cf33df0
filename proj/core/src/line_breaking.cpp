#include "crtlab/line_breaking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "crtlab/errors.hpp"
#include "crtlab/step_path.hpp"

namespace crtlab {

LineBrokenTree::LineBrokenTree(ThetaParam theta, std::vector<double> joins, std::vector<double> eta,
                               std::vector<int> colors)
    : theta_(std::move(theta)), joins_(std::move(joins)), eta_(std::move(eta)), colors_(std::move(colors)) {
    if (joins_.size() != theta_.size()) throw ValidationError("LineBrokenTree: one join per atom required");
    if (colors_.size() != eta_.size()) throw ValidationError("LineBrokenTree: one colour per cutpoint required");
    for (std::size_t j = 0; j < eta_.size(); ++j) {
        if (!(eta_[j] > (j ? eta_[j - 1] : 0.0))) throw ValidationError("LineBrokenTree: cutpoints must increase");
        const int c = colors_[j];
        if (c < 0 || static_cast<std::size_t>(c) >= joins_.size())
            throw ValidationError("LineBrokenTree: colour out of range");
        if (!(joins_[c] < eta_[j]))
            throw ValidationError("LineBrokenTree: join point must precede every cutpoint of its colour");
    }
    base_depth_.assign(eta_.size(), 0.0);
    for (std::size_t j = 2; j <= eta_.size(); ++j) base_depth_[j - 1] = root_distance(attach_position(j));
}

bool LineBrokenTree::joined(std::size_t atom) const noexcept {
    return atom < joins_.size() && !eta_.empty() && joins_[atom] < eta_.back();
}

void LineBrokenTree::check_position(double p) const {
    if (!(p >= 0.0) || eta_.empty() || p > eta_.back())
        throw DomainError("LineBrokenTree: position " + std::to_string(p) + " is not on a realized segment");
}

std::size_t LineBrokenTree::segment_of(double p) const {
    check_position(p);
    if (p == 0.0) return 1;
    return static_cast<std::size_t>(std::lower_bound(eta_.begin(), eta_.end(), p) - eta_.begin()) + 1;
}

double LineBrokenTree::attach_position(std::size_t j) const {
    if (j < 2 || j > eta_.size()) throw DomainError("attach_position: segment index out of range");
    return joins_[colors_[j - 2]];
}

double LineBrokenTree::root_distance(double p) const {
    const std::size_t j = segment_of(p);
    const double base = j == 1 ? 0.0 : eta_[j - 2];
    return (p - base) + base_depth_[j - 1];
}

std::vector<LineBrokenTree::Interval> LineBrokenTree::geodesic(double a, double b) const {
    std::vector<Interval> out;
    std::size_t sa = segment_of(a), sb = segment_of(b);
    while (sa != sb) {
        if (sa > sb) {
            out.push_back({eta_[sa - 2], a});
            a = attach_position(sa);
            sa = segment_of(a);
        } else {
            out.push_back({eta_[sb - 2], b});
            b = attach_position(sb);
            sb = segment_of(b);
        }
    }
    out.push_back({std::min(a, b), std::max(a, b)});
    return out;
}

double LineBrokenTree::distance(double a, double b) const {
    double d = 0.0;
    for (const auto& iv : geodesic(a, b)) d += iv.hi - iv.lo;
    return d;
}

std::size_t LineBrokenTree::branch_count_on_path(double a, double b, double eps) const {
    if (!(eps > 0.0)) throw DomainError("branch_count_on_path: eps must be positive");
    const auto path = geodesic(a, b);
    std::size_t count = 0;
    for (std::size_t i = 0; i < joins_.size(); ++i) {
        if (!(theta_[i] > eps)) break;
        if (!joined(i)) continue;
        const double x = joins_[i];
        for (const auto& iv : path) {
            if (x >= iv.lo && x <= iv.hi) {
                ++count;
                break;
            }
        }
    }
    return count;
}

std::size_t LineBrokenTree::branch_degree(std::size_t atom, std::size_t k) const {
    if (k == 0 || k > eta_.size()) throw DomainError("branch_degree: k exceeds the realization");
    if (atom >= joins_.size()) throw DomainError("branch_degree: atom index out of range");
    if (!(joins_[atom] < eta_[k - 1])) return 0;
    std::size_t d = 2;
    for (std::size_t j = 2; j <= k; ++j) d += colors_[j - 2] == static_cast<int>(atom);
    return d;
}

LabelledTree LineBrokenTree::reduced_tree(std::size_t k) const {
    if (k == 0 || k > eta_.size()) throw DomainError("reduced_tree: k exceeds the realization");
    // vertices: root, leaves 1..k, one attach vertex per atom used by segments 2..k
    std::vector<int> parent{-1};
    std::vector<int> lab{0};
    std::vector<int> leaf_node(k + 1, -1);
    for (std::size_t j = 1; j <= k; ++j) {
        leaf_node[j] = static_cast<int>(parent.size());
        parent.push_back(-1);
        lab.push_back(static_cast<int>(j));
    }
    std::map<int, int> attach_node;
    for (std::size_t j = 2; j <= k; ++j) {
        const int c = colors_[j - 2];
        if (!attach_node.count(c)) {
            attach_node[c] = static_cast<int>(parent.size());
            parent.push_back(-1);
            lab.push_back(0);
        }
    }
    // points on each segment, ordered by position
    std::vector<std::vector<std::pair<double, int>>> on_seg(k + 1);
    for (const auto& [c, node] : attach_node) on_seg[segment_of(joins_[c])].push_back({joins_[c], node});
    for (std::size_t j = 1; j <= k; ++j) {
        auto& pts = on_seg[j];
        pts.push_back({eta_[j - 1], leaf_node[j]});
        std::sort(pts.begin(), pts.end());
        int below = j == 1 ? 0 : attach_node.at(colors_[j - 2]);
        for (const auto& pt : pts) {
            parent[pt.second] = below;
            below = pt.second;
        }
    }
    return label_shape(parent, lab, k, true);
}

LineBrokenTree LineBrokenTree::rescale(double c) const {
    if (!(c > 0.0)) throw DomainError("rescale: factor must be positive");
    std::vector<double> j(joins_), e(eta_);
    for (double& v : j) v /= c;
    for (double& v : e) v /= c;
    return LineBrokenTree(theta_.scaled(c), std::move(j), std::move(e), colors_);
}

LineBrokenTree sample_line_breaking(const ThetaParam& theta, std::size_t k, Rng& rng) {
    if (theta.empty()) throw DomainError("sample_line_breaking: theta has no atoms");
    if (k == 0) throw DomainError("sample_line_breaking: k must be >= 1");
    const std::size_t N = theta.size();
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t i = 0; i < N; ++i) heap.push({rng.exponential(theta[i]), i});
    std::vector<double> joins(N, kInfinity);
    std::vector<double> eta;
    std::vector<int> colors;
    eta.reserve(k);
    colors.reserve(k);
    while (eta.size() < k) {
        const auto [t, i] = heap.top();
        heap.pop();
        if (joins[i] == kInfinity) {
            joins[i] = t;
        } else {
            eta.push_back(t);
            colors.push_back(static_cast<int>(i));
        }
        heap.push({t + rng.exponential(theta[i]), i});
    }
    return LineBrokenTree(theta, std::move(joins), std::move(eta), std::move(colors));
}

}  // namespace crtlab
