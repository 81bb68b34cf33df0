#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace crtlab {

struct RngSeed {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// xoshiro256** seeded from (seed, stream) through SplitMix64. All derived
// variates are computed with explicit algorithms below, never through
// <random> distributions, so output is reproducible across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng() : Rng(RngSeed{}) {}
    explicit Rng(RngSeed s);
    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(RngSeed{seed, stream}) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    // Uniform on [0,1) with 53 random bits; every value is a multiple of 2^-53.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform on (0,1), same grid.
    double uniform_open() noexcept;
    double exponential(double rate = 1.0) noexcept;
    // Uniform integer in [0, n) by Lemire's nearly divisionless method.
    std::uint64_t below(std::uint64_t n) noexcept;
    std::uint64_t poisson(double mean);

    template <class T>
    void shuffle(std::span<T> v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
    template <class T>
    void shuffle(std::vector<T>& v) noexcept { shuffle(std::span<T>(v)); }

    std::vector<std::size_t> permutation(std::size_t n);

    RngSeed origin() const noexcept { return origin_; }

private:
    std::array<std::uint64_t, 4> s_{};
    RngSeed origin_{};
};

}  // namespace crtlab
