#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crtlab/trees.hpp"

namespace checks {

inline std::vector<int> ancestors(const crtlab::LabelledTree& t, int v) {
    std::vector<int> a;
    for (; v >= 0; v = t.parent(static_cast<std::size_t>(v))) a.push_back(v);
    return a;
}

inline int mrca(const crtlab::LabelledTree& t, int a, int b) {
    const auto pa = ancestors(t, a);
    const std::set<int> sa(pa.begin(), pa.end());
    for (int v : ancestors(t, b))
        if (sa.count(v)) return v;
    return -1;
}

// Returns an empty string when the tree satisfies the labelling rules, else a
// description of the first violation.
inline std::string violations(const crtlab::LabelledTree& t) {
    const std::size_t k = t.k(), n = t.vertex_count();
    if (t.parent(0) != -1) return "vertex 0 is not the root";
    if (t.degree(0) != 1) return "root leaf 0 does not have degree 1";
    for (std::size_t v = 1; v <= k; ++v)
        if (t.degree(v) != 1) return "leaf " + std::to_string(v) + " has degree " + std::to_string(t.degree(v));
    for (std::size_t v = k + 1; v < n; ++v)
        if (t.degree(v) < 3) return "branch point " + t.label(v) + " has degree < 3";
    // every vertex reaches 0
    for (std::size_t v = 0; v < n; ++v)
        if (ancestors(t, static_cast<int>(v)).back() != 0) return "vertex not connected to the root";
    std::vector<std::pair<std::size_t, std::size_t>> key(n, {k + 1, k + 1});
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = i + 1; j <= k; ++j) {
            const int m = mrca(t, static_cast<int>(i), static_cast<int>(j));
            if (m < 0) return "no common ancestor";
            key[static_cast<std::size_t>(m)] = std::min(key[static_cast<std::size_t>(m)], std::make_pair(i, j));
        }
    for (std::size_t v = k + 2; v < n; ++v)
        if (!(key[v - 1] < key[v])) return "branch labels out of lexicographic order at " + t.label(v);
    return {};
}

}  // namespace checks
