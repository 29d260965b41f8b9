#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace volcp {

/// Probability mass function on the nonnegative integers with finite support.
/// Construction checks the invariants and renormalizes when the total mass is
/// within 1e-9 of one; anything further off is rejected.
class SparsePmf {
public:
    SparsePmf() = default;
    SparsePmf(std::vector<std::int64_t> support, std::vector<double> probs);

    static SparsePmf dirac(std::int64_t at);

    std::span<const std::int64_t> support() const { return support_; }
    std::span<const double> probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }
    bool empty() const { return support_.empty(); }

    double cdf(std::int64_t s) const;

private:
    std::vector<std::int64_t> support_;
    std::vector<double> probs_;
};

}  // namespace volcp
