#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace crtlab {

// Rooted ordered tree; node 0 is the root, children keep insertion order.
class OrderedTree {
public:
    OrderedTree() : parent_{-1}, children_(1) {}

    std::size_t size() const noexcept { return parent_.size(); }
    int parent(std::size_t v) const { return parent_[v]; }
    const std::vector<int>& children(std::size_t v) const { return children_[v]; }
    int add_child(int parent);

    std::size_t leaf_count() const noexcept;
    std::vector<int> leaves_dfs() const;   // leaves in depth-first (preorder) order
    std::vector<int> preorder() const;
    std::vector<std::size_t> depths() const;

    // Child counts in preorder; determines the tree up to isomorphism of ordered trees.
    std::vector<std::size_t> lukasiewicz() const;
    // Sorted Neveu words, rendered as "" for the root and "1.2.1" style otherwise.
    std::vector<std::vector<int>> neveu_words() const;
    static OrderedTree from_neveu_words(std::vector<std::vector<int>> words);
    static OrderedTree from_lukasiewicz(const std::vector<std::size_t>& counts);

    friend bool operator==(const OrderedTree& a, const OrderedTree& b) { return a.lukasiewicz() == b.lukasiewicz(); }

    std::string to_string() const;

private:
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
};

std::string neveu_to_string(const std::vector<int>& word);

// Graph tree rooted at leaf 0, leaves 1..k, branch points b_1, b_2, ...
// Vertex ids: 0..k are the leaves, k+i is b_i.
class LabelledTree {
public:
    LabelledTree() = default;
    LabelledTree(std::size_t k, std::vector<int> parent);

    std::size_t k() const noexcept { return k_; }
    std::size_t branch_count() const noexcept { return parent_.size() - k_ - 1; }
    std::size_t vertex_count() const noexcept { return parent_.size(); }
    int parent(std::size_t v) const { return parent_[v]; }
    const std::vector<int>& parents() const noexcept { return parent_; }
    std::string label(std::size_t v) const;
    int vertex_of(const std::string& label) const;
    std::size_t degree(std::size_t v) const;

    // "0:-|1:b1|2:b1|b1:0": parents listed in label order 0, 1..k, b1, b2, ...
    std::string canonical() const;

    friend bool operator==(const LabelledTree& a, const LabelledTree& b) {
        return a.k_ == b.k_ && a.parent_ == b.parent_;
    }

private:
    std::size_t k_ = 0;
    std::vector<int> parent_;
};

using MaybeLabelled = std::optional<LabelledTree>;
inline constexpr const char* kCemetery = "cemetery";
std::string canonical(const MaybeLabelled& t);

// Generic labeller. `parent` describes a rooted tree on nodes 0..n-1 (root has
// parent -1); `leaf_label[v]` is in 1..k for the k labelled nodes and 0 otherwise.
// Labelled nodes must be leaves and every leaf must be labelled. If
// root_is_leaf0 the root (which must have one child) plays the role of leaf 0;
// otherwise a new leaf 0 is attached above the root. Degree-2 vertices are
// smoothed and branch points labelled by the lexicographic order of their least
// leaf-label pair.
LabelledTree label_shape(const std::vector<int>& parent, const std::vector<int>& leaf_label, std::size_t k,
                         bool root_is_leaf0);

// Delete leaf `leaf` (in 1..k, must be the largest label k) and re-smooth.
LabelledTree remove_last_leaf(const LabelledTree& t);

}  // namespace crtlab
