#include "crtlab/tree_extract.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_map>

#include "crtlab/errors.hpp"

namespace crtlab {

namespace {

// Range argmin over a fixed array; ties resolve to the latest index.
class MinTable {
public:
    explicit MinTable(const std::vector<double>& v) : v_(v) {
        const std::size_t n = v.size();
        levels_.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) levels_[0][i] = static_cast<std::uint32_t>(i);
        for (std::size_t len = 2; len <= n; len *= 2) {
            const auto& prev = levels_.back();
            std::vector<std::uint32_t> cur(n - len + 1);
            for (std::size_t i = 0; i + len <= n; ++i) cur[i] = pick(prev[i], prev[i + len / 2]);
            levels_.push_back(std::move(cur));
        }
    }

    std::size_t argmin(std::size_t lo, std::size_t hi) const {
        const std::size_t len = hi - lo + 1;
        const std::size_t l = std::bit_width(len) - 1;
        return pick(levels_[l][lo], levels_[l][hi + 1 - (std::size_t{1} << l)]);
    }

private:
    std::uint32_t pick(std::uint32_t a, std::uint32_t b) const {
        if (v_[a] < v_[b]) return a;
        if (v_[b] < v_[a]) return b;
        return std::max(a, b);
    }
    const std::vector<double>& v_;
    std::vector<std::vector<std::uint32_t>> levels_;
};

void validate_perm(const std::vector<std::size_t>& perm) {
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t p : perm) {
        if (p >= perm.size() || seen[p]) throw ValidationError("leaf permutation is not a permutation of [k]");
        seen[p] = 1;
    }
}

}  // namespace

ExtractedTree extract_tree_detailed(const StepPath& x, std::span<const double> u, ExtractOptions opt) {
    if (x.kind() != PathKind::excursion) throw DomainError("extract_tree: path must be excursion-type");
    const std::size_t k = u.size();
    const std::size_t n = x.jump_count();
    const double T = x.domain_end();
    for (std::size_t m = 0; m < k; ++m) {
        if (m > 0 && !(u[m] > u[m - 1])) throw ValidationError("extract_tree: marks must be sorted and distinct");
        if (!(u[m] >= 0.0 && u[m] < T)) throw PreconditionError("extract_tree: mark outside (0, T)");
        if (auto j = x.jump_near(u[m])) {
            if (!opt.allow_jump_marks || x.time(*j) != u[m])
                throw PreconditionError("extract_tree: mark " + std::to_string(u[m]) + " collides with jump time " +
                                        std::to_string(x.time(*j)));
        } else if (u[m] == 0.0) {
            throw PreconditionError("extract_tree: mark at 0 without a jump there");
        }
    }

    ExtractedTree out;
    out.leaf_mark.push_back(-1);
    out.node_jump.push_back(-1);
    if (k == 0) return out;
    if (k == 1 || T == 0.0) {
        out.leaf_mark[0] = 0;
        return out;
    }

    std::vector<double> before(n);
    for (std::size_t i = 0; i < n; ++i) before[i] = x.before(i);
    const MinTable table(before);

    std::vector<std::size_t> upto(k);
    std::vector<double> xv(k);
    std::vector<char> on_jump(k);
    for (std::size_t m = 0; m < k; ++m) {
        upto[m] = x.count_upto(u[m]);
        xv[m] = x.eval(u[m]);
        on_jump[m] = upto[m] > 0 && x.time(upto[m] - 1) == u[m];
    }

    struct Item {
        int node;
        std::size_t wlo;
        std::size_t mlo, mhi;
    };
    std::vector<Item> work{{0, 0, 0, k}};
    while (!work.empty()) {
        const Item it = work.back();
        work.pop_back();

        // r = m(x, u1, uk)
        const std::size_t a = it.mlo, z = it.mhi - 1;
        double r = std::min(xv[a], xv[z]);
        if (upto[a] < upto[z]) r = std::min(r, before[table.argmin(upto[a], upto[z] - 1)]);

        // b = latest jump in the window, at or before u1, with x(b-) < r
        if (upto[a] == 0 || upto[a] - 1 < it.wlo) throw DomainError("extract_tree: no jump precedes the marks");
        std::size_t lo = it.wlo, hi = upto[a] - 1;
        if (!(before[table.argmin(lo, hi)] < r)) throw DomainError("extract_tree: subtree root not found");
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo + 1) / 2;
            if (before[table.argmin(mid, upto[a] - 1)] < r)
                lo = mid;
            else
                hi = mid - 1;
        }
        const std::size_t b = lo;
        out.node_jump[it.node] = static_cast<int>(b);

        // classes: marks sharing the jump that realises the running infimum after b
        std::size_t cls_start = it.mlo;
        long cls_key = -2;
        long last_key = static_cast<long>(b);
        auto close = [&](std::size_t end) {
            if (cls_key == -2) return;
            const int child = out.tree.add_child(it.node);
            out.leaf_mark.push_back(-1);
            out.node_jump.push_back(-1);
            if (end - cls_start == 1)
                out.leaf_mark[child] = static_cast<int>(cls_start);
            else
                work.push_back({child, static_cast<std::size_t>(cls_key), cls_start, end});
        };
        for (std::size_t m = it.mlo; m < it.mhi; ++m) {
            if (u[m] == x.time(b)) {
                out.absorbed.push_back(static_cast<int>(m));
                continue;
            }
            long key = -1;
            double M = kInfinity;
            std::size_t arg = 0;
            if (b + 1 < upto[m]) {
                arg = table.argmin(b + 1, upto[m] - 1);
                M = before[arg];
            }
            if (on_jump[m] || xv[m] > M) key = static_cast<long>(arg);
            if (key >= 0 && key == cls_key) continue;
            close(m);
            if (key >= 0) {
                if (key <= last_key) throw DomainError("extract_tree: equivalence classes are not contiguous");
                last_key = key;
            }
            cls_start = m;
            cls_key = key;
        }
        close(it.mhi);
    }
    return out;
}

OrderedTree extract_tree(const StepPath& path, const MarkSet& marks) {
    marks.check_against(path);
    return extract_tree_detailed(path, marks.times()).tree;
}

MaybeLabelled to_labelled(const OrderedTree& tree, const std::vector<std::size_t>& perm, SpanMode) {
    validate_perm(perm);
    const std::size_t k = perm.size();
    const std::vector<int> leaves = tree.leaves_dfs();
    if (leaves.size() < k) return std::nullopt;
    if (leaves.size() > k) throw ValidationError("to_labelled: tree has more leaves than labels");
    std::vector<int> parent(tree.size());
    for (std::size_t v = 0; v < tree.size(); ++v) parent[v] = tree.parent(v);
    std::vector<int> lab(tree.size(), 0);
    for (std::size_t i = 0; i < k; ++i) lab[leaves[i]] = static_cast<int>(perm[i] + 1);
    return label_shape(parent, lab, k, false);
}

OrderedTree MarkedGenealogy::to_ordered() const {
    OrderedTree t;
    for (std::size_t j = 1; j < parent.size(); ++j) {
        if (parent[j] < 0 || static_cast<std::size_t>(parent[j]) >= j)
            throw DomainError("genealogy: parents must arrive earlier");
        t.add_child(parent[j]);
    }
    return t;
}

bool MarkedGenealogy::is_ancestor(int a, int v) const {
    while (v >= 0 && depth[v] > depth[a]) v = parent[v];
    return v == a;
}

MarkedGenealogy lifo_tree(const StepPath& x) {
    if (x.kind() != PathKind::excursion) throw DomainError("lifo_tree: path must be excursion-type");
    const std::size_t n = x.jump_count();
    MarkedGenealogy g;
    g.parent.assign(n, -1);
    g.children.assign(n, {});
    g.arrival.resize(n);
    g.service.resize(n);
    g.departure.assign(n, x.domain_end());
    g.depth.assign(n, 0);
    const double rate = -x.drift();
    auto crossing = [&](std::size_t seg, double level) {
        const double t = x.time(seg) + (x.after(seg) - level) / rate;
        return std::min(t, x.domain_end());
    };
    std::vector<std::size_t> stack;
    for (std::size_t j = 0; j < n; ++j) {
        g.arrival[j] = x.time(j);
        g.service[j] = x.size(j);
        const double level = x.before(j);
        while (!stack.empty() && x.before(stack.back()) > level) {
            g.departure[stack.back()] = crossing(j - 1, x.before(stack.back()));
            stack.pop_back();
        }
        if (!stack.empty()) {
            g.parent[j] = static_cast<int>(stack.back());
            g.children[stack.back()].push_back(static_cast<int>(j));
            g.depth[j] = g.depth[stack.back()] + 1;
        } else if (j > 0) {
            throw DomainError("lifo_tree: server idles before the end of the excursion");
        }
        stack.push_back(j);
    }
    while (!stack.empty()) {
        if (stack.back() != 0 && rate > 0.0) g.departure[stack.back()] = crossing(n - 1, x.before(stack.back()));
        stack.pop_back();
    }
    return g;
}

std::size_t serve_projection_index(const StepPath& x, double t) {
    const double level = x.eval(t);
    for (std::size_t i = x.count_upto(t); i-- > 0;)
        if (x.before(i) < level) return i;
    throw DomainError("serve_projection: no customer in service at t = " + std::to_string(t));
}

double serve_projection(const StepPath& x, double t) { return x.time(serve_projection_index(x, t)); }

MaybeLabelled spanning_from_marks(const StepPath& path, const MarkSet& marks, const std::vector<std::size_t>& perm,
                                  SpanMode mode) {
    return to_labelled(extract_tree(path, marks), perm, mode);
}

MaybeLabelled spanning_from_projection(const StepPath& path, const MarkedGenealogy& g, const MarkSet& marks,
                                       const std::vector<std::size_t>& perm) {
    validate_perm(perm);
    const std::size_t k = marks.size();
    if (perm.size() != k) throw ValidationError("spanning_from_projection: permutation size differs from k");
    marks.check_against(path);
    std::vector<int> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<int>(serve_projection_index(path, marks[i]));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && g.is_ancestor(v[i], v[j])) return std::nullopt;

    auto lca = [&](int a, int b) {
        while (g.depth[a] > g.depth[b]) a = g.parent[a];
        while (g.depth[b] > g.depth[a]) b = g.parent[b];
        while (a != b) {
            a = g.parent[a];
            b = g.parent[b];
        }
        return a;
    };
    int top = v[0];
    for (std::size_t i = 1; i < k; ++i) top = lca(top, v[i]);

    std::unordered_map<int, int> local;
    std::vector<int> parent, lab;
    auto id_of = [&](int w) {
        auto [it, inserted] = local.try_emplace(w, static_cast<int>(parent.size()));
        if (inserted) {
            parent.push_back(-1);
            lab.push_back(0);
        }
        return it->second;
    };
    id_of(top);
    for (std::size_t i = 0; i < k; ++i) {
        int w = v[i];
        lab[id_of(w)] = static_cast<int>(perm[i] + 1);
        while (w != top) {
            const int p = g.parent[w];
            const bool fresh = !local.count(p);
            const int pid = id_of(p);
            parent[local[w]] = pid;
            if (!fresh) break;
            w = p;
        }
    }
    return label_shape(parent, lab, k, false);
}

MaybeLabelled spanning_from_projection(const StepPath& path, const MarkSet& marks,
                                       const std::vector<std::size_t>& perm) {
    return spanning_from_projection(path, lifo_tree(path), marks, perm);
}

}  // namespace crtlab
