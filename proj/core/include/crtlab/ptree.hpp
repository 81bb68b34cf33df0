#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "crtlab/trees.hpp"

namespace crtlab {

struct MarkedGenealogy;

// Rooted tree on the labels 0..n-1 (printed 1..n); parent[root] = -1.
struct PTree {
    std::size_t n = 0;
    std::vector<int> parent;

    int root() const;
    std::vector<std::size_t> child_counts() const;
    // "-,1,1" style: parent label of vertex 1..n, 1-based, root as "-".
    std::string canonical() const;
    friend bool operator==(const PTree&, const PTree&) = default;
};

PTree make_ptree(std::vector<int> parent);
// Vertex v of the genealogy carries label labels[v].
PTree ptree_from_genealogy(const MarkedGenealogy& g, const std::vector<std::size_t>& labels);

double cayley_pmf(const std::vector<double>& p, const PTree& tree);

// All n^{n-1} rooted labelled trees on n <= 5 vertices, root-major then by parent vector.
const std::vector<PTree>& enumerate_rooted_trees(std::size_t n);

// For weights that are exact dyadic rationals, checks that the Cayley pmf sums
// to one over enumerate_rooted_trees(n) in exact integer arithmetic.
bool cayley_sum_is_exactly_one(const std::vector<double>& p);

struct ShapeCensus {
    std::size_t k = 0;
    std::map<std::string, std::size_t> counts;
    std::size_t cemetery = 0;
    std::size_t total = 0;
};

ShapeCensus shape_census(const std::vector<MaybeLabelled>& trees);
void census_add(ShapeCensus& c, const MaybeLabelled& t);
void census_merge(ShapeCensus& into, const ShapeCensus& other);

}  // namespace crtlab
