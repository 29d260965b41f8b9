#pragma once

#include "volcp/error.hpp"

#include <cstdint>
#include <vector>

namespace volcp {

// Raised when a hazard is requested at a gap the gap distribution can no
// longer reach (G(gap - 1) == 1).
class ExhaustedHazardError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Distribution of the gaps between consecutive change-points, given by its
/// CDF G on {0, 1, 2, ...} with G(0) = 0.
class HazardModel {
public:
    // Geometric gaps shifted onto {1, 2, ...}: G(k) = 1 - (1 - p)^k.
    static HazardModel geometric(double p);
    // Explicit G(0), G(1), ...; values past the end repeat the last entry.
    static HazardModel tabulated(std::vector<double> cdf);

    bool is_geometric() const { return geometric_; }
    double p() const { return p_; }
    const std::vector<double>& table() const { return cdf_; }

    double cdf(std::int64_t k) const;
    // [G(gap) - G(gap-1)] / [1 - G(gap-1)] for gap >= 1.
    double hazard(std::int64_t gap) const;

private:
    HazardModel() = default;

    bool geometric_ = true;
    double p_ = 0.02;
    std::vector<double> cdf_;
    std::vector<double> hazard_;  // hazard_[gap], gap < cdf_.size() + 1; NaN marks exhausted
};

}  // namespace volcp
