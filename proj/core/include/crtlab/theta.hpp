#pragma once

#include <optional>
#include <string>
#include <vector>

namespace crtlab {

// Non-increasing positive prefix theta_1 >= ... >= theta_N > 0 plus a declared
// upper bound on the squared mass of the unstored tail.
class ThetaParam {
public:
    ThetaParam() = default;
    explicit ThetaParam(std::vector<double> atoms, double tail_l2 = 0.0,
                        std::optional<double> nominal_alpha = std::nullopt);

    const std::vector<double>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    double operator[](std::size_t i) const { return atoms_[i]; }
    double tail_l2() const noexcept { return tail_l2_; }
    std::optional<double> nominal_alpha() const noexcept { return nominal_alpha_; }
    bool exactly_finite() const noexcept { return tail_l2_ == 0.0; }

    double sum() const noexcept;
    double l2_norm() const noexcept;
    ThetaParam scaled(double c) const;

private:
    std::vector<double> atoms_;
    double tail_l2_ = 0.0;
    std::optional<double> nominal_alpha_;
};

struct Bracketed {
    double value = 0.0;       // contribution of the stored atoms
    double tail_bound = 0.0;  // the unstored tail adds something in [0, tail_bound]
};

struct GammaValue {
    double value = 0.0;
    bool truncated = false;  // eps below the smallest stored atom while a tail is declared
};

struct StableConstants {
    double alpha = 0.0;
    double c_alpha = 0.0;
    double gamma_limit = 0.0;
    double height_prefactor = 0.0;
};

double gamma_function(double x);

// phi(x) = e^{-x} - 1 + x, accurate for small x.
double varphi(double x) noexcept;

Bracketed psi(const ThetaParam& theta, double t);
double psi_derivative(const ThetaParam& theta, double t);
double psi_inv(const ThetaParam& theta, double y);
GammaValue gamma(const ThetaParam& theta, double eps);
StableConstants stable_constants(double alpha);

double varphi_sum(const ThetaParam& theta, double t);

struct AsymptoticRow {
    double t = 0.0;           // argument (k for Psi, Psi^-1; eps for gamma)
    double psi_ratio = 0.0;   // Psi(t) / t^alpha
    double psi_ratio_hi = 0.0;
    double psi_inv_ratio = 0.0;  // Psi^-1(t) / t^{1/alpha}
};

struct AsymptoticEpsRow {
    double eps = 0.0;
    double gamma_ratio = 0.0;  // eps^{alpha-1} gamma(eps) / gamma_limit
    bool truncated = false;
};

struct AsymptoticReport {
    double alpha = 0.0;
    std::vector<AsymptoticRow> t_rows;
    std::vector<AsymptoticEpsRow> eps_rows;
    double max_deviation = 0.0;  // max |ratio - 1| over every row
};

AsymptoticReport check_asymptotics(const ThetaParam& theta, const std::vector<double>& t_grid,
                                   const std::vector<double>& eps_grid);

// "geometric:r,N", "polynomial:c,p,N", or "stable:alpha,delta,seed".
ThetaParam parse_theta_spec(const std::string& spec);

}  // namespace crtlab
