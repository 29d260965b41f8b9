#include "volcp/model.hpp"

#include "volcp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace volcp {

void Hyperparams::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InputError(std::string("hyperparameter ") + name + " must be positive and finite");
        }
    };
    positive(a, "a");
    positive(b, "b");
    positive(delta0, "delta0");
    positive(delta1, "delta1");
}

Matrix Hyperparams::prior_cov() const {
    if (!include_mu) return Matrix::Constant(1, 1, delta1 * delta1);
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = delta0 * delta0;
    v(1, 1) = delta1 * delta1;
    return v;
}

Vector Hyperparams::regressor(double y_prev) const {
    if (!include_mu) return Vector::Constant(1, y_prev);
    Vector h(2);
    h << 1.0, y_prev;
    return h;
}

SegmentStats SegmentStats::empty(const Hyperparams& h) {
    SegmentStats s;
    s.cov_factor = h.prior_cov();
    s.cross = Vector::Zero(h.dim());
    return s;
}

Vector SegmentStats::mean() const { return cov_factor * cross; }

void SegmentStats::absorb(double y_new, double y_prev) {
    if (!std::isfinite(y_new) || !std::isfinite(y_prev)) {
        throw InputError("segment update with non-finite observation");
    }
    Vector reg(dim());
    if (dim() == 2) {
        reg << 1.0, y_prev;
    } else {
        reg << y_prev;
    }
    // V <- V - (V h)(V h)^T / (1 + h^T V h); the outer product of one vector
    // keeps V exactly symmetric.
    const Vector vh = cov_factor * reg;
    const double denom = 1.0 + reg.dot(vh);
    cov_factor.noalias() -= (vh * vh.transpose()) / denom;
    cross += y_new * reg;
    sum_sq += y_new * y_new;
    ++count;
}

SegmentStats SegmentStats::updated(double y_new, double y_prev) const {
    SegmentStats next = *this;
    next.absorb(y_new, y_prev);
    return next;
}

ShapeScale shape_scale(const SegmentStats& s, const Hyperparams& h) {
    const double resid = s.sum_sq - s.mean().dot(s.cross);
    return {h.a + 0.5 * static_cast<double>(s.count), h.b + 0.5 * std::max(0.0, resid)};
}

StudentT predictive(const SegmentStats& s, const Hyperparams& h, double y_prev) {
    const auto [shape, scale] = shape_scale(s, h);
    const Vector reg = h.regressor(y_prev);
    const double spread = 1.0 + reg.dot(s.cov_factor * reg);
    return StudentT{2.0 * shape, reg.dot(s.mean()), (scale / shape) * spread};
}

BivStudentT param_posterior(const SegmentStats& s, const Hyperparams& h) {
    if (!h.include_mu || s.dim() != 2) {
        throw InputError("parameter posterior over [mu alpha] requires the intercept to be modeled");
    }
    const auto [shape, scale] = shape_scale(s, h);
    return BivStudentT{2.0 * shape, s.mean(), (scale / shape) * s.cov_factor};
}

InverseGamma sigma2_posterior(const SegmentStats& s, const Hyperparams& h) {
    const auto [shape, scale] = shape_scale(s, h);
    return InverseGamma{shape, scale};
}

}  // namespace volcp
