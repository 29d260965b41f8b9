#pragma once

#include "volcp/hazard.hpp"
#include "volcp/model.hpp"
#include "volcp/rng.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace volcp {

struct SegmentParams {
    double mu = 0.0;
    double alpha = 0.0;
    double sigma = 1.0;
};

/// Recipe for one synthetic AR(1) return path with volatility shifts.
/// Parameters either come from an explicit per-segment list or are drawn
/// from the NIG prior. Stream 0 of the seed drives the change-points and
/// stream k + 1 drives segment k (its parameters, then its noise).
///
/// Note: with very small a (e.g. 5e-4) prior draws of sigma^2 are extremely
/// heavy tailed and routinely overflow; generate() reports that as a
/// NumericError instead of capping.
struct SynthSpec {
    std::int64_t length = 0;
    HazardModel hazard = HazardModel::geometric(0.02);
    std::variant<Hyperparams, std::vector<SegmentParams>> params = Hyperparams{};
    double y0 = 0.0;
    std::uint64_t seed = 0;
};

struct SynthPath {
    std::vector<double> y;                    // y_0, y_1, ..., y_T
    std::vector<std::int64_t> changepoints;   // T_0 = 0 < T_1 < ... < T
    std::vector<SegmentParams> segments;      // one per change-point
};

// Change-points below T with i.i.d. gaps drawn from the hazard's G.
std::vector<std::int64_t> sample_changepoints(const HazardModel& hm, std::int64_t length, Rng& rng);

SynthPath generate(const SynthSpec& spec);

}  // namespace volcp
