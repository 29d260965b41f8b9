#pragma once

#include "volcp/distributions.hpp"

#include <cstdint>

namespace volcp {

/// Normal-Inverse-Gamma prior for one AR(1) segment
///     y_t = mu + alpha * y_{t-1} + sigma * eps_t,
/// with sigma^2 ~ IG(a, b) and [mu alpha] | sigma^2 ~ N(0, sigma^2 V0),
/// V0 = diag(delta0^2, delta1^2). With include_mu unset the intercept is
/// dropped and V0 = delta1^2.
struct Hyperparams {
    double a = 5e-4;
    double b = 5e-4;
    double delta0 = 10.0;
    double delta1 = 0.02;
    bool include_mu = true;

    void validate() const;
    int dim() const { return include_mu ? 2 : 1; }
    Matrix prior_cov() const;
    Vector regressor(double y_prev) const;
};

/// Sufficient statistics of the observations absorbed since a candidate
/// change-point. `cov_factor` is (V0^-1 + H^T H)^-1, kept current by
/// Sherman-Morrison rank-one updates; `cross` is sum_i y_i h_i.
struct SegmentStats {
    Matrix cov_factor;
    Vector cross;
    double sum_sq = 0.0;
    std::int64_t count = 0;

    static SegmentStats empty(const Hyperparams& h);

    int dim() const { return static_cast<int>(cross.size()); }
    // Regression mean w = V * cross.
    Vector mean() const;
    // Absorb y_new with regressor built from y_prev. Throws InputError on
    // non-finite input.
    void absorb(double y_new, double y_prev);
    SegmentStats updated(double y_new, double y_prev) const;
};

struct ShapeScale {
    double shape;
    double scale;
};

// a + count/2 and b + max(0, sum_sq - w^T cross)/2.
ShapeScale shape_scale(const SegmentStats& s, const Hyperparams& h);

// One-step predictive of the next observation given the previous one.
StudentT predictive(const SegmentStats& s, const Hyperparams& h, double y_prev);

// Posterior of [mu alpha]; throws InputError when the intercept is omitted.
BivStudentT param_posterior(const SegmentStats& s, const Hyperparams& h);

InverseGamma sigma2_posterior(const SegmentStats& s, const Hyperparams& h);

}  // namespace volcp
