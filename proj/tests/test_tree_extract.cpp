#include <doctest.h>

#include <algorithm>

#include "crtlab/errors.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/samplers.hpp"
#include "crtlab/json_io.hpp"
#include "crtlab/tree_extract.hpp"
#include "labelled_checks.hpp"
#include "oracles.hpp"

using namespace crtlab;

namespace {

StepPath worked_excursion() { return StepPath(1.0, -1.0, {{0.0, 0.4}, {0.25, 0.6}}, PathKind::excursion); }

std::vector<std::size_t> identity(std::size_t k) {
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = i;
    return p;
}

std::vector<double> all_jump_times(const StepPath& x) {
    std::vector<double> m;
    for (const auto& j : x.jumps()) m.push_back(j.time);
    return m;
}

}  // namespace

TEST_CASE("extraction on the worked excursion") {
    const StepPath x = worked_excursion();
    const OrderedTree t = extract_tree(x, MarkSet({0.1, 0.3}));
    CHECK(t == OrderedTree::from_neveu_words({{}, {1}, {2}}));
    CHECK(t == oracle::extract(x, {0.1, 0.3}));
    CHECK(extract_tree(x, MarkSet({0.3})) == OrderedTree());
    CHECK_THROWS_AS(extract_tree(x, MarkSet({0.25, 0.3})), PreconditionError);
    const StepPath bridge(1.0, -1.0, {{0.25, 0.4}, {0.5, 0.6}}, PathKind::bridge);
    CHECK_THROWS_AS(extract_tree(bridge, MarkSet({0.1, 0.3})), DomainError);
}

TEST_CASE("marks at the jumps of a nested excursion give a chain") {
    // every jump arrives while the previous customer is still in service
    const StepPath x(1.0, -1.0, {{0.0, 0.2}, {0.1, 0.3}, {0.3, 0.5}}, PathKind::excursion);
    const ExtractedTree e = extract_tree_detailed(x, all_jump_times(x), {true});
    CHECK(e.tree == OrderedTree::from_neveu_words({{}, {1}, {1, 1}}));
    CHECK(e.tree == lifo_tree(x).to_ordered());
    // the default rejects marks at jump times
    CHECK_THROWS_AS(extract_tree_detailed(x, all_jump_times(x)), PreconditionError);
}

TEST_CASE("to_labelled") {
    const OrderedTree star = OrderedTree::from_neveu_words({{}, {1}, {2}});
    const MaybeLabelled s = to_labelled(star, identity(2));
    REQUIRE(s);
    CHECK(s->canonical() == "0:-|1:b1|2:b1|b1:0");
    const OrderedTree chain = OrderedTree::from_neveu_words({{}, {1}});
    const MaybeLabelled c = to_labelled(chain, identity(1));
    REQUIRE(c);
    CHECK(c->canonical() == "0:-|1:0");
    CHECK_FALSE(to_labelled(chain, identity(2)).has_value());
    CHECK_THROWS_AS(to_labelled(star, {0, 0}), ValidationError);
    CHECK_THROWS_AS(to_labelled(star, {0, 2}), ValidationError);
    // stable and icrt modes follow the same rules
    CHECK(canonical(to_labelled(star, {1, 0}, SpanMode::stable)) == canonical(to_labelled(star, {1, 0}, SpanMode::icrt)));
}

TEST_CASE("LIFO genealogy") {
    const StepPath x = worked_excursion();
    const MarkedGenealogy g = lifo_tree(x);
    CHECK(g.parent == std::vector<int>{-1, 0});
    CHECK(g.depth == std::vector<std::size_t>{0, 1});
    CHECK(g.departure[0] == 1.0);
    CHECK(g.departure[1] == doctest::Approx(0.85));
    CHECK(g.service == std::vector<double>{0.4, 0.6});
    const StepPath one(1.0, -1.0, {{0.0, 1.0}}, PathKind::excursion);
    CHECK(lifo_tree(one).parent == std::vector<int>{-1});
    CHECK(g.is_ancestor(0, 1));
    CHECK_FALSE(g.is_ancestor(1, 0));
}

TEST_CASE("property: LIFO equals the nesting oracle and the recursive extraction") {
    Rng rng(41, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        const StepPath x = oracle::random_excursion(1 + rng.below(8), rng);
        const MarkedGenealogy g = lifo_tree(x);
        REQUIRE(g.parent == oracle::nesting_parents(x));
        REQUIRE(extract_tree_detailed(x, all_jump_times(x), {true}).tree == g.to_ordered());
        for (std::size_t v = 0; v < g.size(); ++v)
            for (int c : g.children[v]) {
                REQUIRE(g.arrival[static_cast<std::size_t>(c)] > g.arrival[v]);
                REQUIRE(g.arrival[static_cast<std::size_t>(c)] < g.departure[v]);
            }
    }
}

TEST_CASE("property: LIFO genealogy on larger paths") {
    Rng rng(42, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const StepPath x = oracle::random_excursion(1 + rng.below(150), rng);
        const MarkedGenealogy g = lifo_tree(x);
        REQUIRE(g.parent == oracle::nesting_parents(x));
        for (std::size_t v = 0; v < g.size(); ++v)
            REQUIRE(record_ancestor_indices(x, g.arrival[v], 0.0).size() == g.depth[v] + 1);
    }
}

TEST_CASE("property: extraction matches the literal recursive definition") {
    Rng rng(43, 0);
    for (int trial = 0; trial < 3000; ++trial) {
        const StepPath x = oracle::random_excursion(1 + rng.below(30), rng);
        const MarkSet marks = sample_marks(1 + rng.below(8), rng, x);
        const std::vector<double> m(marks.times().begin(), marks.times().end());
        const OrderedTree t = extract_tree(x, marks);
        INFO("trial " << trial << " path " << path_to_json(x).dump() << " marks " << nlohmann::json(m).dump()
                       << " got " << t.to_string() << " want " << oracle::extract(x, m).to_string());
        REQUIRE(t == oracle::extract(x, m));
        REQUIRE(t.leaf_count() <= marks.size());
    }
}

TEST_CASE("marks on the initial descent") {
    const StepPath x(1.0, -1.0, {{0.0, 0.6}, {0.4, 0.4}}, PathKind::excursion);
    const OrderedTree t = extract_tree(x, MarkSet({0.1, 0.2, 0.3}));
    CHECK(t == oracle::extract(x, {0.1, 0.2, 0.3}));
    const OrderedTree u = extract_tree(x, MarkSet({0.1, 0.5, 0.9}));
    CHECK(u == oracle::extract(x, {0.1, 0.5, 0.9}));
}

TEST_CASE("property: extraction is consistent when the last leaf is removed") {
    Rng rng(44, 0);
    int compared = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const StepPath x = oracle::random_excursion(5 + rng.below(40), rng);
        const std::size_t k = 2 + rng.below(5);
        const MarkSet marks = sample_marks(k, rng, x);
        const auto perm = rng.permutation(k);
        const MaybeLabelled full = to_labelled(extract_tree(x, marks), perm);
        if (!full) continue;
        REQUIRE(checks::violations(*full) == "");
        // drop the mark carrying label k
        std::vector<double> rest;
        std::vector<std::size_t> sub_perm;
        const OrderedTree t = extract_tree(x, marks);
        const auto leaves = t.leaves_dfs();
        // leaves in DFS order are the marks in increasing time when every mark is a leaf
        REQUIRE(leaves.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            if (perm[i] == k - 1) continue;
            rest.push_back(marks[i]);
            sub_perm.push_back(perm[i]);
        }
        const MaybeLabelled smaller = to_labelled(extract_tree(x, MarkSet(rest)), sub_perm);
        REQUIRE(smaller);
        REQUIRE(smaller->canonical() == remove_last_leaf(*full).canonical());
        ++compared;
    }
    CHECK(compared > 1000);
}

TEST_CASE("serve projection") {
    const StepPath x = worked_excursion();
    CHECK(serve_projection(x, 0.3) == 0.25);
    CHECK(serve_projection(x, 0.25) == 0.25);
    CHECK(serve_projection(x, std::nextafter(0.25, 1.0)) == 0.25);
    CHECK(serve_projection(x, 0.1) == 0.0);
    CHECK(serve_projection(x, 0.9) == 0.0);
    CHECK(serve_projection(x, 0.3) == x.tau(0.3, x.eval(0.3)));
}

TEST_CASE("property: service intervals partition time by service amount") {
    Rng rng(45, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const StepPath x = oracle::random_excursion(1 + rng.below(20), rng);
        // q is constant between breakpoints; breakpoints are jump times and departure times
        std::vector<double> cuts{0.0, 1.0};
        const MarkedGenealogy g = lifo_tree(x);
        for (std::size_t i = 0; i < x.jump_count(); ++i) {
            cuts.push_back(x.time(i));
            cuts.push_back(g.departure[i]);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> measure(x.jump_count(), 0.0);
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double lo = cuts[c], hi = cuts[c + 1];
            if (!(hi > lo)) continue;
            const double mid = 0.5 * (lo + hi);
            measure[serve_projection_index(x, mid)] += hi - lo;
            REQUIRE(serve_projection(x, mid) == doctest::Approx(x.tau(mid, x.eval(mid))));
        }
        for (std::size_t i = 0; i < x.jump_count(); ++i) REQUIRE(measure[i] == doctest::Approx(x.size(i)).epsilon(1e-9));
    }
}

TEST_CASE("spanning trees by marks and by projection") {
    const StepPath x = worked_excursion();
    const MarkSet m({0.1, 0.3});
    const MaybeLabelled a = spanning_from_marks(x, m, identity(2));
    const MaybeLabelled b = spanning_from_projection(x, m, identity(2));
    REQUIRE(a);
    CHECK(a->canonical() == "0:-|1:b1|2:b1|b1:0");
    // q(0.1) = 0 is an ancestor of q(0.3) = 0.25, so the projection route has no 2-leaf tree
    CHECK_FALSE(b.has_value());
    const MarkSet one({0.3});
    CHECK(canonical(spanning_from_marks(x, one, identity(1))) == "0:-|1:0");
    CHECK(canonical(spanning_from_projection(x, one, identity(1))) == "0:-|1:0");
}

TEST_CASE("property: routes agree when projected customers are unrelated") {
    Rng rng(46, 0);
    int agreed = 0, eligible = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 500;
        const StepPath x = sample_X_n(std::vector<double>(n, 1.0 / n), rng).excursion;
        const MarkedGenealogy g = lifo_tree(x);
        const std::size_t k = 2 + rng.below(3);
        const MarkSet marks = sample_marks(k, rng, x);
        const auto perm = rng.permutation(k);
        std::vector<int> q;
        for (std::size_t i = 0; i < k; ++i) q.push_back(static_cast<int>(serve_projection_index(x, marks[i])));
        bool related = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i != j && g.is_ancestor(q[i], q[j])) related = true;
        const MaybeLabelled a = spanning_from_marks(x, marks, perm);
        const MaybeLabelled b = spanning_from_projection(x, g, marks, perm);
        if (related) {
            CHECK_FALSE(b.has_value());
            continue;
        }
        ++eligible;
        REQUIRE(b);
        REQUIRE(checks::violations(*b) == "");
        agreed += canonical(a) == canonical(b);
    }
    CHECK(eligible > 300);
    CHECK(agreed == eligible);
}
