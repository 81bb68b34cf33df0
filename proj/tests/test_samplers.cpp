#include <doctest.h>

#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "crtlab/errors.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/samplers.hpp"
#include "crtlab/theta.hpp"

using namespace crtlab;

TEST_CASE("rng determinism and spacing") {
    Rng a(5, 3), b(5, 3), c(5, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        REQUIRE(x == b.next());
        differs = differs || x != c.next();
    }
    CHECK(differs);
    Rng r(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(std::ldexp(u, 53) == std::floor(std::ldexp(u, 53)));
        REQUIRE(r.uniform_open() > 0.0);
        REQUIRE(r.below(7) < 7);
    }
    auto p = r.permutation(10);
    std::sort(p.begin(), p.end());
    std::vector<std::size_t> id(10);
    std::iota(id.begin(), id.end(), std::size_t{0});
    CHECK(p == id);
}

TEST_CASE("rng variates have the right means") {
    Rng r(2, 0);
    const int n = 200000;
    double se = 0, sp = 0, sq = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
        se += r.exponential(2.0);
        sp += static_cast<double>(r.poisson(3.5));
        sq += static_cast<double>(r.poisson(40.0));
        sb += static_cast<double>(r.below(10));
    }
    CHECK(se / n == doctest::Approx(0.5).epsilon(5 * 0.5 / std::sqrt(n) / 0.5));
    CHECK(std::fabs(sp / n - 3.5) < 5 * std::sqrt(3.5 / n));
    CHECK(std::fabs(sq / n - 40.0) < 5 * std::sqrt(40.0 / n));
    CHECK(std::fabs(sb / n - 4.5) < 5 * std::sqrt(8.25 / n));
}

TEST_CASE("marks") {
    Rng r(3, 0);
    const MarkSet one = sample_marks(1, r);
    REQUIRE(one.size() == 1);
    CHECK(one[0] > 0.0);
    CHECK(one[0] < 1.0);
    Rng r1(4, 0), r2(4, 0);
    const MarkSet big = sample_marks(100000, r1);
    const MarkSet again = sample_marks(100000, r2);
    CHECK(std::equal(big.times().begin(), big.times().end(), again.times().begin(), again.times().end()));
    const double mean = std::accumulate(big.times().begin(), big.times().end(), 0.0) / 1e5;
    CHECK(mean >= 0.497);
    CHECK(mean <= 0.503);
    CHECK_THROWS_AS(sample_marks(0, r), DomainError);
    const StepPath path(1.0, -1.0, {{0.25, 0.4}, {0.5, 0.6}}, PathKind::bridge);
    for (int i = 0; i < 100; ++i) CHECK_FALSE(sample_marks(5, r, path).collides_with(path));
}

TEST_CASE("bridges from theta") {
    Rng r(5, 0);
    const StepPath one = sample_Y_theta(ThetaParam({1.0}), r);
    CHECK(one.jump_count() == 1);
    CHECK(one.drift() == -1.0);
    CHECK(one.eval(1.0) == 0.0);
    for (int i = 0; i < 200; ++i) {
        const StepPath y = sample_Y_theta(ThetaParam({2.0, 1.0}), r);
        REQUIRE(y.eval(1.0) == 0.0);
        auto s = y.sizes();
        std::sort(s.rbegin(), s.rend());
        REQUIRE(s == std::vector<double>{2.0, 1.0});
    }
}

TEST_CASE("bridges from weights") {
    Rng r(6, 0);
    const StepPath one = sample_Y_n({1.0}, r);
    CHECK(one.size(0) == 1.0);
    CHECK(one.drift() == -1.0);
    std::vector<std::size_t> labels;
    const StepPath forced = make_bridge({0.5, 0.25}, {0.6, 0.4}, &labels);
    CHECK(forced == StepPath(1.0, -1.0, {{0.25, 0.4}, {0.5, 0.6}}, PathKind::bridge));
    CHECK(labels == std::vector<std::size_t>{1, 0});
    for (int i = 0; i < 200; ++i) REQUIRE(sample_Y_n({0.2, 0.3, 0.5}, r).eval(1.0) == 0.0);
    CHECK_THROWS_AS(sample_Y_n({0.5, 0.4}, r), ValidationError);
    CHECK_THROWS_AS(sample_Y_n({0.5, 0.6, -0.1}, r), ValidationError);
}

TEST_CASE("excursions") {
    Rng r(7, 0);
    const VervaatSample one = sample_X_theta(ThetaParam({1.0}), r);
    CHECK(one.excursion.jump_count() == 1);
    CHECK(one.excursion.time(0) == 0.0);
    CHECK(one.excursion.size(0) == 1.0);
    CHECK(one.excursion.drift() == -1.0);
    const ThetaParam th = parse_theta_spec("polynomial:1,1,20");
    for (int i = 0; i < 10000; ++i) {
        const VervaatSample s = sample_X_theta(th, r);
        for (std::size_t j = 0; j < s.excursion.jump_count(); ++j) REQUIRE(s.excursion.before(j) >= -1e-12);
        REQUIRE(s.excursion.time(0) == 0.0);
        REQUIRE(s.labels.size() == th.size());
        for (std::size_t j = 0; j < s.labels.size(); ++j) REQUIRE(s.excursion.size(j) == th[s.labels[j]]);
    }
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    for (int i = 0; i < 1000; ++i) {
        const VervaatSample s = sample_X_n(p, r);
        for (std::size_t j = 0; j < 4; ++j) REQUIRE(s.excursion.size(j) == p[s.labels[j]]);
    }
}

TEST_CASE("stable surrogate counts and sizes") {
    const StableConstants c = stable_constants(1.5);
    const double lambda = surrogate_mean_count(1.5, 1.0);
    CHECK(lambda == doctest::Approx(0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CHECK(lambda == doctest::Approx(0.282095).epsilon(1e-6));
    // quadrature of the intensity over [1, inf) after x = 1/u
    auto f = [&](double u) { return c.c_alpha * std::pow(u, 1.5 - 1.0); };
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0);
    CHECK(quad == doctest::Approx(lambda).epsilon(1e-9));

    Rng r(8, 0);
    double total = 0;
    const int seeds = 100000;
    for (int i = 0; i < seeds; ++i) {
        const ThetaParam th = sample_stable_jump_surrogate(1.5, 1.0, r);
        for (double a : th.atoms()) REQUIRE(a >= 1.0);
        total += static_cast<double>(th.size());
    }
    CHECK(std::fabs(total / seeds - lambda) < 5.0 * std::sqrt(lambda / seeds));
    CHECK_THROWS_AS(sample_stable_jump_surrogate(0.9, 0.1, r), DomainError);
    CHECK_THROWS_AS(sample_stable_jump_surrogate(1.5, 1.5, r), DomainError);
    CHECK_THROWS_AS(sample_stable_jump_surrogate(1.5, 0.0, r), DomainError);
}

TEST_CASE("stable surrogate intensity and first moment") {
    const double alpha = 1.5, delta = 1e-3;
    const StableConstants c = stable_constants(alpha);
    const int seeds = 10000;
    const std::vector<double> edges{1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1, 1.0};
    std::vector<double> counts(edges.size() - 1, 0.0);
    std::vector<double> firsts;
    Rng r(9, 0);
    for (int i = 0; i < seeds; ++i) {
        const ThetaParam th = sample_stable_jump_surrogate(alpha, delta, r);
        CHECK(th.nominal_alpha() == alpha);
        double s = 0.0;
        for (double a : th.atoms()) {
            if (a <= 1.0) s += a;
            for (std::size_t b = 0; b + 1 < edges.size(); ++b)
                if (a >= edges[b] && a < edges[b + 1]) counts[b] += 1.0;
        }
        firsts.push_back(s);
        REQUIRE(th.tail_l2() == doctest::Approx(surrogate_tail_l2(alpha, delta)));
    }
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double want = seeds * (surrogate_mean_count(alpha, edges[b]) - surrogate_mean_count(alpha, edges[b + 1]));
        CHECK(std::fabs(counts[b] - want) < 5.0 * std::sqrt(want));
    }
    auto f = [&](double x) { return x * c.c_alpha * std::pow(x, -1.0 - alpha); };
    const double m1 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, delta, 1.0, 15);
    CHECK(m1 == doctest::Approx(c.c_alpha * (std::pow(delta, 1.0 - alpha) - 1.0) / (alpha - 1.0)).epsilon(1e-8));
    double mean = 0, var = 0;
    for (double v : firsts) mean += v;
    mean /= seeds;
    for (double v : firsts) var += (v - mean) * (v - mean);
    var /= seeds - 1;
    CHECK(std::fabs(mean - m1) < 5.0 * std::sqrt(var / seeds));
    CHECK(std::fabs(mean - m1) < 0.05 * m1);
}

TEST_CASE("stable surrogate above the storage cap folds the band into the tail") {
    Rng r(10, 0);
    const std::size_t cap = 1000;
    const ThetaParam th = sample_stable_jump_surrogate(1.5, 1e-6, r, cap);
    const StableConstants c = stable_constants(1.5);
    const double floor = std::pow(1.5 * cap / c.c_alpha, -1.0 / 1.5);
    CHECK(th.atoms().back() >= floor);
    CHECK(th.tail_l2() == doctest::Approx(surrogate_tail_l2(1.5, floor)).epsilon(1e-12));
    CHECK(static_cast<double>(th.size()) < 2.0 * cap);
}
