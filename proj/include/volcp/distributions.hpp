#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace volcp {

// Dimension is 1 (AR coefficient only) or 2 (intercept and AR coefficient).
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 2, 2>;

/// Location-scale Student-t. `scale_sq` is the squared scale, so the
/// variance (for dof > 2) is scale_sq * dof / (dof - 2).
struct StudentT {
    double dof = 1.0;
    double loc = 0.0;
    double scale_sq = 1.0;

    double scale() const;
    double logpdf(double y) const;
    double pdf(double y) const;
    double cdf(double y) const;
    // Root search on the regularized incomplete beta CDF. Returns +-infinity
    // when the quantile lies beyond the finite doubles (tiny dof).
    double quantile(double q) const;
};

/// Multivariate Student-t with squared-scale matrix `shape`.
struct BivStudentT {
    double dof = 1.0;
    Vector loc;
    Matrix shape;

    int dim() const { return static_cast<int>(loc.size()); }
    StudentT marginal(int i) const;
};

struct InverseGamma {
    double shape = 1.0;
    double scale = 1.0;

    double mode() const { return scale / (shape + 1.0); }
    double logpdf(double x) const;
    double cdf(double x) const;
    // Root search in log x on the regularized upper incomplete gamma.
    // Returns 0 or +infinity when the quantile under/overflows.
    double quantile(double q) const;
};

/// Finite mixture of Student-t densities, weights summing to one.
struct StudentTMixture {
    std::vector<double> weights;
    std::vector<StudentT> components;

    double pdf(double y) const;
    double cdf(double y) const;
    double quantile(double q) const;
};

}  // namespace volcp
