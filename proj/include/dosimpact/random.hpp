#pragma once

// Reproducible per-path random streams.
//
// Every path owns an independent xoshiro256** stream whose state is derived
// from (root seed, path index) alone, so a path's draws do not depend on how
// many paths run or on which thread runs them.

#include <array>
#include <cstdint>
#include <limits>

namespace dosimpact {

/// splitmix64 finalizer; full avalanche on 64-bit input.
std::uint64_t mix64(std::uint64_t x);

class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Seed of the stream for one path.
std::uint64_t path_stream_seed(std::uint64_t root_seed, std::uint64_t path_index);

/// Standard normal deviates by the Box–Muller transform.
///
/// Written out by hand because std::normal_distribution is implementation
/// defined and results must be bit-identical across standard libraries.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

    double operator()();

private:
    Xoshiro256 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dosimpact
