#include <doctest.h>

#include "crtlab/errors.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/trees.hpp"
#include "labelled_checks.hpp"

using namespace crtlab;

namespace {

OrderedTree random_ordered(std::size_t n, Rng& rng) {
    OrderedTree t;
    for (std::size_t i = 1; i < n; ++i) t.add_child(static_cast<int>(rng.below(i)));
    return t;
}

}  // namespace

TEST_CASE("ordered trees and Neveu words") {
    const OrderedTree star = OrderedTree::from_neveu_words({{}, {1}, {2}});
    CHECK(star.size() == 3);
    CHECK(star.leaf_count() == 2);
    CHECK(star.lukasiewicz() == std::vector<std::size_t>{2, 0, 0});
    CHECK(star.neveu_words() == std::vector<std::vector<int>>{{}, {1}, {2}});
    CHECK(neveu_to_string({1, 2, 1}) == "1.2.1");
    CHECK(neveu_to_string({}).empty());
    CHECK_THROWS_AS(OrderedTree::from_neveu_words({{}, {2}}), ValidationError);
    CHECK_THROWS_AS(OrderedTree::from_neveu_words({{1}}), ValidationError);
    CHECK_THROWS_AS(OrderedTree::from_neveu_words({{}, {1, 1}}), ValidationError);
    const OrderedTree chain = OrderedTree::from_neveu_words({{}, {1}, {1, 1}});
    CHECK(chain.depths() == std::vector<std::size_t>{0, 1, 2});
    CHECK_FALSE(chain == star);
}

TEST_CASE("property: encodings round trip") {
    Rng rng(31, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const OrderedTree t = random_ordered(1 + rng.below(30), rng);
        REQUIRE(OrderedTree::from_neveu_words(t.neveu_words()) == t);
        REQUIRE(OrderedTree::from_lukasiewicz(t.lukasiewicz()) == t);
        REQUIRE(OrderedTree::from_neveu_words(t.neveu_words()).neveu_words() == t.neveu_words());
        std::size_t sum = 0;
        for (auto c : t.lukasiewicz()) sum += c;
        REQUIRE(sum + 1 == t.size());
    }
}

TEST_CASE("labelled tree canonical form") {
    // leaf 0 attached to a root b1 with leaves 1, 2
    const LabelledTree t(2, {-1, 3, 3, 0});
    CHECK(t.canonical() == "0:-|1:b1|2:b1|b1:0");
    CHECK(t.label(3) == "b1");
    CHECK(t.vertex_of("b1") == 3);
    CHECK(t.degree(3) == 3);
    CHECK(checks::violations(t).empty());
    CHECK(canonical(MaybeLabelled{}) == "cemetery");
    CHECK_THROWS_AS(LabelledTree(2, {0, 3, 3, 0}), ValidationError);
}

TEST_CASE("label_shape smooths and orders branch points") {
    // root r(0) - a(1) - leaves; a has children x(2) leaf, c(3); c has leaves y(4), z(5)
    const std::vector<int> parent{-1, 0, 1, 1, 3, 3};
    const std::vector<int> lab{0, 0, 3, 0, 1, 2};
    const LabelledTree t = label_shape(parent, lab, 3, false);
    CHECK(checks::violations(t).empty());
    // pair (1,2) meets at c, so c is b1; (1,3) meets at a which becomes b2
    CHECK(t.canonical() == "0:-|1:b1|2:b1|3:b2|b1:b2|b2:0");
    const LabelledTree same = label_shape(parent, lab, 3, false);
    CHECK(same == t);
    CHECK_THROWS_AS(label_shape(parent, {0, 0, 3, 0, 1, 0}, 3, false), ValidationError);
}

TEST_CASE("property: random shapes satisfy the labelling rules") {
    Rng rng(32, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const OrderedTree t = random_ordered(2 + rng.below(25), rng);
        const auto leaves = t.leaves_dfs();
        std::vector<int> parent(t.size());
        for (std::size_t v = 0; v < t.size(); ++v) parent[v] = t.parent(v);
        const auto perm = rng.permutation(leaves.size());
        std::vector<int> lab(t.size(), 0);
        for (std::size_t i = 0; i < leaves.size(); ++i) lab[static_cast<std::size_t>(leaves[i])] = static_cast<int>(perm[i] + 1);
        const LabelledTree l = label_shape(parent, lab, leaves.size(), false);
        INFO(l.canonical());
        REQUIRE(checks::violations(l) == "");
        if (l.k() >= 2) {
            const LabelledTree smaller = remove_last_leaf(l);
            REQUIRE(smaller.k() == l.k() - 1);
            REQUIRE(checks::violations(smaller) == "");
        }
    }
}

TEST_CASE("remove_last_leaf") {
    const LabelledTree t(2, {-1, 3, 3, 0});
    const LabelledTree one = remove_last_leaf(t);
    CHECK(one.canonical() == "0:-|1:0");
}
