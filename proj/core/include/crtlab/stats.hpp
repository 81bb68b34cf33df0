#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace crtlab {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double df = 0.0;
    std::size_t cells = 0;  // after pooling
};

inline constexpr double kMinExpected = 5.0;

double chi_square_sf(double statistic, double df);
// Kolmogorov limiting survival function Q(lambda) = P(sup |B| > lambda).
double kolmogorov_sf(double lambda);

TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected_prob,
                          double min_expected = kMinExpected);
TestResult chi_square_gof(const std::map<std::string, std::size_t>& observed,
                          const std::map<std::string, double>& expected_prob, double min_expected = kMinExpected);

TestResult chi_square_two_sample(const std::map<std::string, std::size_t>& a,
                                 const std::map<std::string, std::size_t>& b, double min_expected = kMinExpected);
TestResult chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                                 double min_expected = kMinExpected);

TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);
TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

double median(std::vector<double> v);
double mean(const std::vector<double>& v);

}  // namespace crtlab
