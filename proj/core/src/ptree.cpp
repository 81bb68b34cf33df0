#include "crtlab/ptree.hpp"

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <mutex>

#include "crtlab/errors.hpp"
#include "crtlab/samplers.hpp"
#include "crtlab/tree_extract.hpp"

namespace crtlab {

namespace {

bool is_rooted_tree(const std::vector<int>& parent) {
    const std::size_t n = parent.size();
    int roots = 0;
    for (int p : parent) {
        if (p == -1)
            ++roots;
        else if (p < 0 || static_cast<std::size_t>(p) >= n)
            return false;
    }
    if (roots != 1) return false;
    for (std::size_t v = 0; v < n; ++v) {
        int w = static_cast<int>(v);
        std::size_t steps = 0;
        while (parent[w] != -1) {
            w = parent[w];
            if (++steps > n) return false;
        }
    }
    return true;
}

}  // namespace

int PTree::root() const {
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] < 0) return static_cast<int>(v);
    return -1;
}

std::vector<std::size_t> PTree::child_counts() const {
    std::vector<std::size_t> c(n, 0);
    for (int p : parent)
        if (p >= 0) ++c[p];
    return c;
}

std::string PTree::canonical() const {
    std::string s;
    for (std::size_t v = 0; v < n; ++v) {
        if (v) s += ',';
        s += parent[v] < 0 ? std::string("-") : std::to_string(parent[v] + 1);
    }
    return s;
}

PTree make_ptree(std::vector<int> parent) {
    if (!is_rooted_tree(parent)) throw ValidationError("PTree: parent vector is not a rooted tree");
    PTree t;
    t.n = parent.size();
    t.parent = std::move(parent);
    return t;
}

PTree ptree_from_genealogy(const MarkedGenealogy& g, const std::vector<std::size_t>& labels) {
    const std::size_t n = g.size();
    if (labels.size() != n) throw ValidationError("ptree_from_genealogy: one label per vertex required");
    std::vector<int> parent(n, -2);
    for (std::size_t v = 0; v < n; ++v) {
        if (labels[v] >= n || parent[labels[v]] != -2) throw ValidationError("ptree_from_genealogy: bad labels");
        parent[labels[v]] = g.parent[v] < 0 ? -1 : static_cast<int>(labels[g.parent[v]]);
    }
    return make_ptree(std::move(parent));
}

double cayley_pmf(const std::vector<double>& p, const PTree& tree) {
    if (p.size() != tree.n || tree.parent.size() != tree.n)
        throw ValidationError("cayley_pmf: weight vector and tree differ in size");
    validate_weights(p);
    const auto kappa = tree.child_counts();
    double prob = 1.0;
    for (std::size_t i = 0; i < tree.n; ++i)
        for (std::size_t c = 0; c < kappa[i]; ++c) prob *= p[i];
    return prob;
}

const std::vector<PTree>& enumerate_rooted_trees(std::size_t n) {
    if (n < 1 || n > 5) throw DomainError("enumerate_rooted_trees: n must lie in [1, 5]");
    static std::array<std::vector<PTree>, 6> cache;
    static std::array<std::once_flag, 6> once;
    std::call_once(once[n], [n] {
        std::vector<PTree> out;
        for (std::size_t root = 0; root < n; ++root) {
            // odometer over parent choices for the n-1 non-root vertices
            std::vector<int> parent(n, 0);
            parent[root] = -1;
            std::vector<std::size_t> others;
            for (std::size_t v = 0; v < n; ++v)
                if (v != root) others.push_back(v);
            std::size_t total = 1;
            for (std::size_t i = 0; i < others.size(); ++i) total *= n;
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t c = code;
                for (auto it = others.rbegin(); it != others.rend(); ++it) {
                    parent[*it] = static_cast<int>(c % n);
                    c /= n;
                }
                bool ok = true;
                for (std::size_t v : others)
                    if (parent[v] == static_cast<int>(v)) ok = false;
                if (ok && is_rooted_tree(parent)) out.push_back(make_ptree(parent));
            }
        }
        cache[n] = std::move(out);
    });
    return cache[n];
}

bool cayley_sum_is_exactly_one(const std::vector<double>& p) {
    using boost::multiprecision::cpp_int;
    validate_weights(p);
    const std::size_t n = p.size();
    int m = 0;
    std::vector<cpp_int> num(n);
    for (;; ++m) {
        bool all = true;
        for (double v : p) {
            const double s = std::ldexp(v, m);
            if (s != std::floor(s)) all = false;
        }
        if (all) break;
        if (m > 1074) throw ValidationError("cayley_sum_is_exactly_one: weights are not dyadic");
    }
    for (std::size_t i = 0; i < n; ++i) num[i] = cpp_int(static_cast<unsigned long long>(std::ldexp(p[i], m)));
    cpp_int sum = 0;
    for (const PTree& t : enumerate_rooted_trees(n)) {
        const auto kappa = t.child_counts();
        cpp_int term = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < kappa[i]; ++c) term *= num[i];
        sum += term;
    }
    const cpp_int one = cpp_int(1) << (m * static_cast<int>(n - 1));
    return sum == one;
}

void census_add(ShapeCensus& c, const MaybeLabelled& t) {
    if (t) {
        if (!c.counts.empty() && c.k != t->k()) throw ValidationError("shape_census: trees with different k");
        c.k = t->k();
        ++c.counts[t->canonical()];
    } else {
        ++c.cemetery;
    }
    ++c.total;
}

void census_merge(ShapeCensus& into, const ShapeCensus& other) {
    if (other.total == 0) return;
    if (!other.counts.empty() && !into.counts.empty() && into.k != other.k)
        throw ValidationError("shape_census: merging censuses with different k");
    if (!other.counts.empty()) into.k = other.k;
    for (const auto& [key, cnt] : other.counts) into.counts[key] += cnt;
    into.cemetery += other.cemetery;
    into.total += other.total;
}

ShapeCensus shape_census(const std::vector<MaybeLabelled>& trees) {
    ShapeCensus c;
    for (const auto& t : trees) census_add(c, t);
    return c;
}

}  // namespace crtlab
