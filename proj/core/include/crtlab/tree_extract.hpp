#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crtlab/step_path.hpp"
#include "crtlab/trees.hpp"

namespace crtlab {

enum class SpanMode { stable, icrt };

struct ExtractOptions {
    // Accept marks that coincide exactly with jump times (marks = jump times is
    // how the LIFO genealogy is recovered). Near misses are always rejected.
    bool allow_jump_marks = false;
};

struct ExtractedTree {
    OrderedTree tree;
    std::vector<int> leaf_mark;   // node -> index of the mark it carries, or -1
    std::vector<int> node_jump;   // internal node -> jump index of its subtree root b, or -1
    std::vector<int> absorbed;    // marks swallowed as the root b of some subtree
};

ExtractedTree extract_tree_detailed(const StepPath& path, std::span<const double> marks,
                                    ExtractOptions opt = {});
OrderedTree extract_tree(const StepPath& path, const MarkSet& marks);

// Leaves in depth-first order receive labels leaf_perm[0]+1, leaf_perm[1]+1, ...
// Returns the cemetery state when the tree has fewer than leaf_perm.size() leaves.
MaybeLabelled to_labelled(const OrderedTree& tree, const std::vector<std::size_t>& leaf_perm,
                          SpanMode mode = SpanMode::icrt);

struct MarkedGenealogy {
    std::vector<int> parent;                 // -1 for the root
    std::vector<std::vector<int>> children;  // arrival order
    std::vector<double> arrival;
    std::vector<double> service;
    std::vector<double> departure;           // sigma(arrival)
    std::vector<std::size_t> depth;          // root has depth 0

    std::size_t size() const noexcept { return parent.size(); }
    OrderedTree to_ordered() const;
    bool is_ancestor(int a, int v) const;    // a is a (non-strict) ancestor of v
};

MarkedGenealogy lifo_tree(const StepPath& path);

// Index of the jump whose customer is in service at time t.
std::size_t serve_projection_index(const StepPath& path, double t);
double serve_projection(const StepPath& path, double t);

MaybeLabelled spanning_from_marks(const StepPath& path, const MarkSet& marks,
                                  const std::vector<std::size_t>& leaf_perm, SpanMode mode = SpanMode::icrt);
MaybeLabelled spanning_from_projection(const StepPath& path, const MarkSet& marks,
                                       const std::vector<std::size_t>& leaf_perm);
MaybeLabelled spanning_from_projection(const StepPath& path, const MarkedGenealogy& lifo, const MarkSet& marks,
                                       const std::vector<std::size_t>& leaf_perm);

}  // namespace crtlab
