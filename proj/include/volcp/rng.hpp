#pragma once

#include <cstdint>
#include <random>

namespace volcp {

/// Portable seeded generator. Each (seed, stream) pair seeds an independent
/// std::mt19937_64 (whose output sequence is fixed by the C++ standard) via
/// splitmix64 mixing; all variates are derived from its raw 64-bit output
/// with the algorithms below, never from <random> distributions, whose
/// output is implementation-defined.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();
    // Standard normal by the Marsaglia polar method.
    double normal();
    // log of a Gamma(shape, 1) variate: Marsaglia-Tsang for shape >= 1,
    // boosted by U^(1/shape) below that. Stays finite for tiny shapes.
    double log_gamma_variate(double shape);

    static std::uint64_t splitmix64(std::uint64_t x);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace volcp
