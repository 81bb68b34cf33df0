#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace crtlab {

inline constexpr double kCollisionTol = 1e-12;
inline constexpr double kTieTol = 1e-12;
inline constexpr double kEndpointTol = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class PathKind { generic, bridge, excursion };

const char* to_string(PathKind k) noexcept;
PathKind path_kind_from_string(const char* s);

struct Jump {
    double time = 0.0;
    double size = 0.0;
    friend bool operator==(const Jump&, const Jump&) = default;
};

// Piecewise-linear cadlag path on [0, T]:
//   x(t) = drift * t + sum of sizes of jumps at times <= t,   x(0-) = 0.
// Immutable after construction.
class StepPath {
public:
    StepPath() = default;
    StepPath(double domain_end, double drift, std::vector<Jump> jumps,
             PathKind kind = PathKind::generic);

    double domain_end() const noexcept { return T_; }
    double drift() const noexcept { return drift_; }
    PathKind kind() const noexcept { return kind_; }
    std::span<const Jump> jumps() const noexcept { return jumps_; }
    std::size_t jump_count() const noexcept { return jumps_.size(); }
    const Jump& jump(std::size_t i) const { return jumps_[i]; }
    double time(std::size_t i) const { return jumps_[i].time; }
    double size(std::size_t i) const { return jumps_[i].size; }

    double eval(double t) const;
    double eval_left(double t) const;
    // x(t_i-) and x(t_i) for the i-th jump.
    double before(std::size_t i) const noexcept;
    double after(std::size_t i) const noexcept;

    // Number of jumps with time <= t (resp. < t).
    std::size_t count_upto(double t) const noexcept;
    std::size_t count_before(double t) const noexcept;
    std::optional<std::size_t> jump_at(double t) const noexcept;
    // Index of a jump within kCollisionTol of t, if any.
    std::optional<std::size_t> jump_near(double t, double tol = kCollisionTol) const noexcept;

    double running_min(double s, double t) const;
    double tau(double t, double r) const;
    double sigma(double s) const;
    std::pair<double, double> g_d(double t) const;

    // First time in (from, T] at which the path, started at the value it takes
    // right after `from`, goes strictly below `level` (or reaches it when
    // `inclusive`). Returns T if it never does.
    double first_passage(double from, double level, bool inclusive) const;

    double total_size() const noexcept;
    std::vector<double> sizes() const;

    friend bool operator==(const StepPath& a, const StepPath& b) noexcept {
        return a.T_ == b.T_ && a.drift_ == b.drift_ && a.kind_ == b.kind_ && a.jumps_ == b.jumps_;
    }

private:
    void check_time(double t, const char* op) const;

    double T_ = 1.0;
    double drift_ = 0.0;
    PathKind kind_ = PathKind::generic;
    std::vector<Jump> jumps_;
    std::vector<double> cum_;  // cum_[i] = sum of sizes of jumps 0..i
};

struct InfimumPoint {
    double rho = 0.0;
    double min_value = 0.0;
    // Index of the jump at rho, or jump_count() when the minimum is x(T).
    std::size_t jump_index = 0;
};

InfimumPoint infimum_point(const StepPath& bridge);
StepPath vervaat(const StepPath& bridge);
StepPath vervaat(const StepPath& bridge, double& rho_out);
StepPath vervaat_inverse(const StepPath& excursion, double rho);

std::vector<double> record_ancestors(const StepPath& path, double t, double eps);
std::vector<std::size_t> record_ancestor_indices(const StepPath& path, double t, double eps);

// Sorted distinct times in (0, T).
class MarkSet {
public:
    MarkSet() = default;
    explicit MarkSet(std::vector<double> times);

    std::span<const double> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    double operator[](std::size_t i) const { return times_[i]; }

    // Throws PreconditionError when a mark is within tol of a jump time.
    void check_against(const StepPath& path, double tol = kCollisionTol) const;
    bool collides_with(const StepPath& path, double tol = kCollisionTol) const noexcept;

private:
    std::vector<double> times_;
};

}  // namespace crtlab
