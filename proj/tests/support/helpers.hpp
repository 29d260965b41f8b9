#pragma once

#include "volcp/rng.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

namespace volcp::testing {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

template <class A, class B>
double rel_err_norm(const A& got, const B& want) {
    return (got - want).norm() / std::max(want.norm(), 1e-300);
}

// y_0..y_n of an AR(1) path with N(0, sigma^2) noise.
inline std::vector<double> ar1_path(Rng& rng, std::size_t n, double mu, double alpha, double sigma, double y0 = 0.0) {
    std::vector<double> y{y0};
    for (std::size_t i = 0; i < n; ++i) y.push_back(mu + alpha * y.back() + sigma * rng.normal());
    return y;
}

}  // namespace volcp::testing
