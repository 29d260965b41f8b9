#pragma once

#include "volcp/distributions.hpp"
#include "volcp/hazard.hpp"
#include "volcp/model.hpp"
#include "volcp/pmf.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace volcp {

struct FilterConfig {
    Hyperparams hyper;
    HazardModel hazard = HazardModel::geometric(0.02);
    // Maximum number of retained change-point hypotheses; 0 disables pruning.
    std::size_t max_support = 100;

    void validate() const { hyper.validate(); }
};

/// One hypothesis "the most recent change-point is at s", with its
/// normalized log posterior probability and the statistics of y_{s+1..t}.
struct SupportAtom {
    std::int64_t s = 0;
    double log_weight = 0.0;
    SegmentStats stats;
};

enum class ParamTarget { mu, alpha, log_sigma };

struct ParamSummary {
    double point;
    double lo;
    double hi;
};

/// Online posterior over the most recent change-point of one return series.
///
/// Time t counts observed returns after y_0. The hypothesis s is created by
/// the step that observes y_{s+1}; for that step it predicts with the prior.
/// After every step the atoms are sorted by s, s < t, stats.count == t - s,
/// and the probabilities sum to one. Weights live in log space throughout.
class ChangepointFilter {
public:
    ChangepointFilter(FilterConfig config, double y0);

    // Rebuilds a checkpointed state; validates every invariant.
    static ChangepointFilter restore(FilterConfig config, std::int64_t t, double last_y,
                                     std::vector<SupportAtom> atoms);

    void step(double y);

    std::int64_t t() const { return t_; }
    double last_y() const { return last_y_; }
    const FilterConfig& config() const { return config_; }
    const std::vector<SupportAtom>& atoms() const { return atoms_; }

    SparsePmf posterior() const;
    // argmax of the posterior, ties going to the larger s.
    std::int64_t map_changepoint() const;
    const SupportAtom& map_atom() const;

    // Summary conditional on the MAP hypothesis: posterior mean with an
    // equal-tailed interval for mu and alpha; mode and interval of sigma^2
    // mapped through x -> log(x)/2 for log_sigma.
    ParamSummary param_summary(ParamTarget target, double level = 0.95) const;

    // Predictive of y_{t+1} given that the MAP hypothesis is still current.
    StudentT map_predictive() const;

    // Predictive of y_{t+1} with the change-point integrated out: one
    // component per atom (weight pi_t(s) * (1 - hazard)) followed by the
    // fresh-segment component (weight sum_u hazard * pi_t(u)).
    StudentTMixture predictive_mixture() const;

private:
    ChangepointFilter() = default;
    void require_started() const;
    void normalize();
    void prune();

    FilterConfig config_;
    std::int64_t t_ = 0;
    double last_y_ = 0.0;
    std::vector<SupportAtom> atoms_;
};

}  // namespace volcp
