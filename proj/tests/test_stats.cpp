#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "crtlab/errors.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/stats.hpp"

using namespace crtlab;

TEST_CASE("chi-square goodness of fit") {
    const TestResult a = chi_square_gof(std::vector<double>{10, 20}, {0.5, 0.5});
    CHECK(a.statistic == doctest::Approx(10.0 / 3.0));
    CHECK(a.df == 1);
    CHECK(a.p_value == doctest::Approx(boost::math::cdf(boost::math::complement(boost::math::chi_squared(1), 10.0 / 3.0))));
    const TestResult b = chi_square_gof(std::vector<double>{25, 50, 25}, {0.25, 0.5, 0.25});
    CHECK(b.statistic == 0.0);
    CHECK(b.p_value == 1.0);
    // every cell below min_expected pools into one
    const TestResult c = chi_square_gof(std::vector<double>{1, 2, 1}, {0.25, 0.5, 0.25});
    CHECK(c.cells == 1);
    CHECK(c.p_value == 1.0);
    CHECK_THROWS_AS(chi_square_gof(std::vector<double>{0, 0}, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(chi_square_gof(std::vector<double>{1, 2}, {0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(chi_square_gof(std::vector<double>{1, 2}, {1.0}), ValidationError);
}

TEST_CASE("pooling keeps totals") {
    // expected counts 50, 45, 3, 2: the last two pool into one cell of 5
    const TestResult r = chi_square_gof(std::vector<double>{50, 45, 3, 2}, {0.5, 0.45, 0.03, 0.02});
    CHECK(r.cells == 3);
    CHECK(r.statistic == doctest::Approx(0.0));
}

TEST_CASE("keyed tables") {
    std::map<std::string, std::size_t> obs{{"a", 10}, {"b", 20}};
    std::map<std::string, double> ex{{"a", 0.5}, {"b", 0.5}};
    CHECK(chi_square_gof(obs, ex).statistic == doctest::Approx(10.0 / 3.0));
    // an observed key with zero expected probability rejects outright
    std::map<std::string, std::size_t> bad{{"a", 10}, {"c", 1}};
    const TestResult r = chi_square_gof(bad, ex);
    CHECK(std::isinf(r.statistic));
    CHECK(r.p_value == 0.0);
}

TEST_CASE("two-sample tests") {
    std::map<std::string, std::size_t> a{{"x", 30}, {"y", 10}};
    const TestResult t = chi_square_two_sample(a, a);
    CHECK(t.statistic == 0.0);
    CHECK(t.p_value == 1.0);
    CHECK_THROWS_AS(chi_square_two_sample(std::map<std::string, std::size_t>{}, a), ValidationError);
    const TestResult v = chi_square_two_sample(std::vector<double>{30, 10}, std::vector<double>{10, 30});
    // 2x2 table, all expected 20: 4 * 100 / 20
    CHECK(v.statistic == doctest::Approx(20.0));
    CHECK(v.df == 1);
    const TestResult k = ks_two_sample({0.0}, {1.0});
    CHECK(k.statistic == 1.0);
    const TestResult same = ks_two_sample({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3});
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), ValidationError);
}

TEST_CASE("kolmogorov survival function") {
    CHECK(kolmogorov_sf(0.0) == 1.0);
    CHECK(kolmogorov_sf(1.36) == doctest::Approx(0.0494).epsilon(1e-2));
    CHECK(kolmogorov_sf(1.63) == doctest::Approx(0.0098).epsilon(2e-2));
    CHECK(kolmogorov_sf(0.2) == doctest::Approx(1.0).epsilon(1e-6));
    double last = 1.0;
    for (double x = 0.05; x < 4; x += 0.05) {
        const double q = kolmogorov_sf(x);
        CHECK(q <= last + 1e-15);
        last = q;
    }
}

TEST_CASE("one-sample KS calibration") {
    Rng r(81, 0);
    int rejects = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> u(500);
        for (double& x : u) x = r.uniform();
        if (ks_one_sample(u, [](double t) { return std::clamp(t, 0.0, 1.0); }).p_value < 0.05) ++rejects;
    }
    CHECK(rejects >= 2);
    CHECK(rejects <= 22);
    std::vector<double> shifted(500);
    for (double& x : shifted) x = 0.1 + 0.9 * r.uniform();
    CHECK(ks_one_sample(shifted, [](double t) { return std::clamp(t, 0.0, 1.0); }).p_value < 1e-3);
}

TEST_CASE("summaries") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK(mean({1, 2, 3, 6}) == 3);
    CHECK_THROWS_AS(median({}), ValidationError);
    CHECK(chi_square_sf(0.0, 3) == 1.0);
}
