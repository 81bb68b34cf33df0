#include "crtlab/trees.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "crtlab/errors.hpp"

namespace crtlab {

int OrderedTree::add_child(int p) {
    if (p < 0 || static_cast<std::size_t>(p) >= parent_.size()) throw ValidationError("OrderedTree: bad parent");
    const int id = static_cast<int>(parent_.size());
    parent_.push_back(p);
    children_.emplace_back();
    children_[p].push_back(id);
    return id;
}

std::size_t OrderedTree::leaf_count() const noexcept {
    std::size_t c = 0;
    for (const auto& ch : children_) c += ch.empty();
    return c;
}

std::vector<int> OrderedTree::preorder() const {
    std::vector<int> out;
    out.reserve(size());
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        const auto& ch = children_[v];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<int> OrderedTree::leaves_dfs() const {
    std::vector<int> out;
    for (int v : preorder())
        if (children_[v].empty()) out.push_back(v);
    return out;
}

std::vector<std::size_t> OrderedTree::depths() const {
    std::vector<std::size_t> d(size(), 0);
    for (int v : preorder())
        if (v != 0) d[v] = d[parent_[v]] + 1;
    return d;
}

std::vector<std::size_t> OrderedTree::lukasiewicz() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (int v : preorder()) out.push_back(children_[v].size());
    return out;
}

std::vector<std::vector<int>> OrderedTree::neveu_words() const {
    std::vector<std::vector<int>> word(size());
    for (int v : preorder()) {
        const auto& ch = children_[v];
        for (std::size_t i = 0; i < ch.size(); ++i) {
            word[ch[i]] = word[v];
            word[ch[i]].push_back(static_cast<int>(i + 1));
        }
    }
    std::sort(word.begin(), word.end());
    return word;
}

OrderedTree OrderedTree::from_neveu_words(std::vector<std::vector<int>> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    if (words.empty() || !words.front().empty()) throw ValidationError("Neveu words: root missing");
    OrderedTree t;
    std::map<std::vector<int>, int> id;
    id[{}] = 0;
    for (std::size_t i = 1; i < words.size(); ++i) {
        const auto& w = words[i];
        std::vector<int> up(w.begin(), w.end() - 1);
        auto it = id.find(up);
        if (it == id.end()) throw ValidationError("Neveu words: parent of " + neveu_to_string(w) + " missing");
        if (w.back() != static_cast<int>(t.children(it->second).size()) + 1)
            throw ValidationError("Neveu words: sibling gap at " + neveu_to_string(w));
        id[w] = t.add_child(it->second);
    }
    return t;
}

OrderedTree OrderedTree::from_lukasiewicz(const std::vector<std::size_t>& counts) {
    if (counts.empty()) throw ValidationError("Lukasiewicz: empty sequence");
    OrderedTree t;
    std::vector<std::pair<int, std::size_t>> stack{{0, counts[0]}};
    std::size_t i = 1;
    while (!stack.empty()) {
        auto& [v, left] = stack.back();
        if (left == 0) {
            stack.pop_back();
            continue;
        }
        --left;
        if (i >= counts.size()) throw ValidationError("Lukasiewicz: sequence too short");
        const int c = t.add_child(v);
        stack.emplace_back(c, counts[i++]);
    }
    if (i != counts.size()) throw ValidationError("Lukasiewicz: trailing entries");
    return t;
}

std::string neveu_to_string(const std::vector<int>& word) {
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(word[i]);
    }
    return s;
}

std::string OrderedTree::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& w : neveu_words()) {
        if (!first) s += ',';
        first = false;
        s += w.empty() ? std::string("()") : "(" + neveu_to_string(w) + ")";
    }
    return s + "}";
}

LabelledTree::LabelledTree(std::size_t k, std::vector<int> parent) : k_(k), parent_(std::move(parent)) {
    if (parent_.size() < k_ + 1) throw ValidationError("LabelledTree: too few vertices");
    if (parent_[0] != -1) throw ValidationError("LabelledTree: vertex 0 must be the root");
    for (std::size_t v = 1; v < parent_.size(); ++v)
        if (parent_[v] < 0 || static_cast<std::size_t>(parent_[v]) >= parent_.size())
            throw ValidationError("LabelledTree: bad parent entry");
}

std::string LabelledTree::label(std::size_t v) const {
    if (v <= k_) return std::to_string(v);
    return "b" + std::to_string(v - k_);
}

int LabelledTree::vertex_of(const std::string& s) const {
    if (!s.empty() && s[0] == 'b') {
        const std::size_t i = std::stoul(s.substr(1));
        if (i == 0 || k_ + i >= parent_.size()) throw ValidationError("LabelledTree: unknown label " + s);
        return static_cast<int>(k_ + i);
    }
    const std::size_t i = std::stoul(s);
    if (i > k_) throw ValidationError("LabelledTree: unknown label " + s);
    return static_cast<int>(i);
}

std::size_t LabelledTree::degree(std::size_t v) const {
    std::size_t d = parent_[v] >= 0 ? 1 : 0;
    for (int p : parent_)
        if (p == static_cast<int>(v)) ++d;
    return d;
}

std::string LabelledTree::canonical() const {
    std::string s;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
        if (v) s += '|';
        s += label(v) + ":" + (parent_[v] < 0 ? std::string("-") : label(parent_[v]));
    }
    return s;
}

std::string canonical(const MaybeLabelled& t) { return t ? t->canonical() : std::string(kCemetery); }

LabelledTree label_shape(const std::vector<int>& parent_in, const std::vector<int>& leaf_label, std::size_t k,
                         bool root_is_leaf0) {
    std::vector<int> parent(parent_in);
    std::vector<int> lab(leaf_label);
    if (lab.size() != parent.size()) throw ValidationError("label_shape: label vector size mismatch");
    int root = -1;
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] < 0) {
            if (root >= 0) throw ValidationError("label_shape: more than one root");
            root = static_cast<int>(v);
        }
    if (root < 0) throw ValidationError("label_shape: no root");
    if (!root_is_leaf0) {
        const int r0 = static_cast<int>(parent.size());
        parent.push_back(-1);
        lab.push_back(0);
        parent[root] = r0;
        root = r0;
    }
    const std::size_t n = parent.size();
    std::vector<std::vector<int>> children(n);
    for (std::size_t v = 0; v < n; ++v)
        if (parent[v] >= 0) children[parent[v]].push_back(static_cast<int>(v));
    if (children[root].size() != 1)
        throw ValidationError("label_shape: the root leaf must have exactly one child");

    // preorder from the root
    std::vector<int> order;
    order.reserve(n);
    {
        std::vector<int> st{root};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            order.push_back(v);
            for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) st.push_back(*it);
        }
    }
    if (order.size() != n) throw ValidationError("label_shape: input is not a tree");

    std::vector<int> leaf_node(k + 1, -1);
    leaf_node[0] = root;
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<int>(v) == root) continue;
        const int l = lab[v];
        if (l < 0 || static_cast<std::size_t>(l) > k) throw ValidationError("label_shape: leaf label out of range");
        if (l > 0) {
            if (!children[v].empty()) throw ValidationError("label_shape: labelled vertex is not a leaf");
            if (leaf_node[l] >= 0) throw ValidationError("label_shape: duplicate leaf label");
            leaf_node[l] = static_cast<int>(v);
        } else if (children[v].empty()) {
            throw ValidationError("label_shape: unlabelled leaf");
        }
    }
    for (std::size_t l = 1; l <= k; ++l)
        if (leaf_node[l] < 0) throw ValidationError("label_shape: missing leaf label");

    // minimum leaf label below each vertex (postorder)
    std::vector<int> minlab(n, std::numeric_limits<int>::max());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (lab[v] > 0 && v != root) minlab[v] = lab[v];
        for (int c : children[v]) minlab[v] = std::min(minlab[v], minlab[c]);
    }

    struct Branch {
        int i, j, node;
    };
    std::vector<Branch> branches;
    for (int v : order) {
        if (v == root || children[v].size() < 2) continue;
        std::vector<int> m;
        for (int c : children[v]) m.push_back(minlab[c]);
        std::sort(m.begin(), m.end());
        branches.push_back({m[0], m[1], v});
    }
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });

    std::vector<int> new_id(n, -1);
    for (std::size_t l = 0; l <= k; ++l) new_id[leaf_node[l]] = static_cast<int>(l);
    for (std::size_t b = 0; b < branches.size(); ++b) new_id[branches[b].node] = static_cast<int>(k + 1 + b);

    std::vector<int> out(k + 1 + branches.size(), -1);
    for (int v : order) {
        if (v == root || new_id[v] < 0) continue;
        int p = parent[v];
        while (new_id[p] < 0) p = parent[p];
        out[new_id[v]] = new_id[p];
    }
    return LabelledTree(k, std::move(out));
}

LabelledTree remove_last_leaf(const LabelledTree& t) {
    const std::size_t k = t.k();
    if (k == 0) throw ValidationError("remove_last_leaf: no leaf to remove");
    std::vector<int> parent(t.parents());
    std::vector<int> lab(parent.size(), 0);
    for (std::size_t l = 1; l < k; ++l) lab[l] = static_cast<int>(l);
    // detach leaf k by re-rooting it under nothing: rebuild without it
    std::vector<int> keep;
    std::vector<int> remap(parent.size(), -1);
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (v == k) continue;
        remap[v] = static_cast<int>(keep.size());
        keep.push_back(static_cast<int>(v));
    }
    std::vector<int> p2(keep.size());
    std::vector<int> l2(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const int v = keep[i];
        p2[i] = parent[v] < 0 ? -1 : remap[parent[v]];
        l2[i] = lab[v];
    }
    return label_shape(p2, l2, k - 1, true);
}

}  // namespace crtlab
