#include "crtlab/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "crtlab/errors.hpp"

namespace crtlab {

double chi_square_sf(double statistic, double df) {
    if (df <= 0.0) return 1.0;
    if (!(statistic > 0.0)) return 1.0;
    if (std::isinf(statistic)) return 0.0;
    return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

double kolmogorov_sf(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    if (lambda < 1.18) {
        // theta-function form of the CDF converges fast for small lambda
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double s = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double o = 2.0 * j - 1.0;
            s += std::exp(-o * o * pi2 / (8.0 * lambda * lambda));
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * s;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

struct Cell {
    double obs;
    double exp;
};

// Merge cells with expected count below the threshold into one pooled cell;
// keep merging the smallest remaining cell into the pool while it is too small.
std::vector<Cell> pool_cells(std::vector<Cell> cells, double min_expected) {
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.exp < b.exp; });
    std::vector<Cell> out;
    Cell pool{0.0, 0.0};
    bool have_pool = false;
    std::size_t i = 0;
    while (i < cells.size() && cells[i].exp < min_expected) {
        pool.obs += cells[i].obs;
        pool.exp += cells[i].exp;
        have_pool = true;
        ++i;
    }
    while (have_pool && pool.exp < min_expected && i < cells.size()) {
        pool.obs += cells[i].obs;
        pool.exp += cells[i].exp;
        ++i;
    }
    if (have_pool) out.push_back(pool);
    for (; i < cells.size(); ++i) out.push_back(cells[i]);
    return out;
}

}  // namespace

TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                          double min_expected) {
    if (observed.size() != expected.size()) throw ValidationError("chi_square_gof: table sizes differ");
    double total = 0.0, psum = 0.0;
    for (double o : observed) {
        if (o < 0.0) throw ValidationError("chi_square_gof: negative count");
        total += o;
    }
    for (double p : expected) {
        if (p < 0.0) throw ValidationError("chi_square_gof: negative probability");
        psum += p;
    }
    if (total <= 0.0) throw ValidationError("chi_square_gof: all observed counts are zero");
    if (std::fabs(psum - 1.0) > 1e-9) throw ValidationError("chi_square_gof: expected probabilities must sum to 1");

    std::vector<Cell> cells;
    TestResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] == 0.0) {
            if (observed[i] > 0.0) {
                r.statistic = std::numeric_limits<double>::infinity();
                r.p_value = 0.0;
                r.cells = observed.size();
                r.df = static_cast<double>(observed.size()) - 1.0;
                return r;
            }
            continue;
        }
        cells.push_back({observed[i], expected[i] * total});
    }
    cells = pool_cells(std::move(cells), min_expected);
    for (const Cell& c : cells) r.statistic += (c.obs - c.exp) * (c.obs - c.exp) / c.exp;
    r.cells = cells.size();
    r.df = static_cast<double>(cells.size()) - 1.0;
    r.p_value = r.df > 0.0 ? chi_square_sf(r.statistic, r.df) : 1.0;
    return r;
}

TestResult chi_square_gof(const std::map<std::string, std::size_t>& observed,
                          const std::map<std::string, double>& expected, double min_expected) {
    std::vector<double> o, e;
    for (const auto& [key, p] : expected) {
        auto it = observed.find(key);
        o.push_back(it == observed.end() ? 0.0 : static_cast<double>(it->second));
        e.push_back(p);
    }
    for (const auto& [key, c] : observed) {
        if (!expected.count(key) && c > 0) {
            o.push_back(static_cast<double>(c));
            e.push_back(0.0);
        }
    }
    return chi_square_gof(o, e, min_expected);
}

TestResult chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b, double min_expected) {
    if (a.size() != b.size()) throw ValidationError("chi_square_two_sample: table sizes differ");
    const double na = std::accumulate(a.begin(), a.end(), 0.0);
    const double nb = std::accumulate(b.begin(), b.end(), 0.0);
    if (na <= 0.0 || nb <= 0.0) throw ValidationError("chi_square_two_sample: empty sample");
    const double n = na + nb;
    // pool on the smaller expected count of each column
    struct Col {
        double a, b, key;
    };
    std::vector<Col> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double c = a[i] + b[i];
        if (c > 0.0) cols.push_back({a[i], b[i], c * std::min(na, nb) / n});
    }
    std::sort(cols.begin(), cols.end(), [](const Col& x, const Col& y) { return x.key < y.key; });
    std::vector<Col> pooled;
    Col pool{0.0, 0.0, 0.0};
    bool have_pool = false;
    std::size_t i = 0;
    while (i < cols.size() && cols[i].key < min_expected) {
        pool.a += cols[i].a;
        pool.b += cols[i].b;
        pool.key += cols[i].key;
        have_pool = true;
        ++i;
    }
    while (have_pool && pool.key < min_expected && i < cols.size()) {
        pool.a += cols[i].a;
        pool.b += cols[i].b;
        pool.key += cols[i].key;
        ++i;
    }
    if (have_pool) pooled.push_back(pool);
    for (; i < cols.size(); ++i) pooled.push_back(cols[i]);

    TestResult r;
    for (const Col& c : pooled) {
        const double tot = c.a + c.b;
        const double ea = na * tot / n, eb = nb * tot / n;
        r.statistic += (c.a - ea) * (c.a - ea) / ea + (c.b - eb) * (c.b - eb) / eb;
    }
    r.cells = pooled.size();
    r.df = static_cast<double>(pooled.size()) - 1.0;
    r.p_value = r.df > 0.0 ? chi_square_sf(r.statistic, r.df) : 1.0;
    return r;
}

TestResult chi_square_two_sample(const std::map<std::string, std::size_t>& a,
                                 const std::map<std::string, std::size_t>& b, double min_expected) {
    std::map<std::string, std::pair<double, double>> joint;
    for (const auto& [k, c] : a) joint[k].first += static_cast<double>(c);
    for (const auto& [k, c] : b) joint[k].second += static_cast<double>(c);
    std::vector<double> va, vb;
    for (const auto& [k, c] : joint) {
        va.push_back(c.first);
        vb.push_back(c.second);
    }
    return chi_square_two_sample(va, vb, min_expected);
}

TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty()) throw ValidationError("ks_two_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double n = static_cast<double>(xs.size()), m = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(std::sqrt(n * m / (n + m)) * d);
    return r;
}

TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw ValidationError("ks_one_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(std::sqrt(n) * d);
    return r;
}

double median(std::vector<double> v) {
    if (v.empty()) throw ValidationError("median: empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("mean: empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace crtlab
