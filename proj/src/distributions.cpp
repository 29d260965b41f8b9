#include "volcp/distributions.hpp"

#include "volcp/error.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace volcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCdfTol = 1e-8;
// Root searches stop once the CDF is this close to the target level.
constexpr double kStopTol = 1e-12;

void check_level(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw InputError("quantile level must lie in (0, 1), got " + std::to_string(q));
    }
}

// Generic monotone inversion: find x = to_x(u) with cdf(x) ~ q by a
// bracketing root search in u over [-u_max, u_max]. to_x maps that range onto
// the whole support, so the cost stays bounded even for extremely heavy
// tails. The bracket is found by stepping out from u = 0 in growing steps,
// then closed with TOMS 748 (safeguarded by bisection steps). Returns
// to_x(+-inf) when the level lies beyond the reachable range.
template <class Cdf, class ToX>
double invert(const Cdf& cdf, const ToX& to_x, double u_max, double q) {
    double best_u = 0.0, best_g = kInf;
    const auto g = [&](double u) {
        const double v = cdf(to_x(u)) - q;
        if (std::abs(v) < std::abs(best_g)) {
            best_u = u;
            best_g = v;
        }
        return v;
    };
    double lo = 0.0, hi = 0.0;
    double g_lo = g(0.0), g_hi = g_lo;
    if (std::abs(g_lo) <= kStopTol) return to_x(0.0);
    const double dir = g_lo < 0.0 ? 1.0 : -1.0;
    for (double step = 1.0;; step *= 4.0) {
        const double u = std::clamp(dir * (std::abs(dir < 0 ? lo : hi) + step), -u_max, u_max);
        const double g_u = g(u);
        if (std::abs(g_u) <= kStopTol) return to_x(u);
        if (dir > 0.0) {
            if (g_u > 0.0) {
                hi = u;
                g_hi = g_u;
                break;
            }
            lo = hi = u;
            g_lo = g_u;
        } else {
            if (g_u < 0.0) {
                lo = u;
                g_lo = g_u;
                break;
            }
            lo = hi = u;
            g_hi = g_u;
        }
        if (std::abs(u) >= u_max) {
            if (std::abs(g_u) > kCdfTol) return to_x(dir * kInf);
            return to_x(u);
        }
    }
    std::uintmax_t max_iter = 200;
    const auto tol = [&](double a, double b) {
        return std::abs(best_g) <= kStopTol || b - a <= 1e-12 * std::max(1.0, std::abs(a));
    };
    boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi, tol, max_iter);
    return to_x(best_u);
}

// log(1 + r^2) without overflowing for astronomically large r.
double log1p_sq(double r) {
    r = std::abs(r);
    if (r > 1e150) return 2.0 * std::log(r);
    return std::log1p(r * r);
}

// Standard Student-t CDF at z, dof nu.
double std_t_cdf(double nu, double z) {
    if (std::isnan(z)) return z;
    if (z == kInf) return 1.0;
    if (z == -kInf) return 0.0;
    const double z2 = z * z;
    double tail;  // P(T > |z|)
    if (z2 < nu) {
        // Accurate near the centre: P(|T| < |z|) = I_{z2/(nu+z2)}(1/2, nu/2).
        tail = 0.5 * boost::math::ibetac(0.5, 0.5 * nu, z2 / (nu + z2));
    } else {
        const double r = std::abs(z) / std::sqrt(nu);
        const double a = 0.5 * nu;
        if (r > 1e100) {
            const double log_r = std::log(std::abs(z)) - 0.5 * std::log(nu);
            // x = 1/(1+r^2) underflows; I_x(a, 1/2) = x^a / (a B(a, 1/2)) * (1 + O(x)).
            const double log_beta = std::lgamma(a) + std::lgamma(0.5) - std::lgamma(a + 0.5);
            tail = 0.5 * std::exp(-2.0 * a * log_r - std::log(a) - log_beta);
        } else {
            tail = 0.5 * boost::math::ibeta(a, 0.5, 1.0 / (1.0 + r * r));
        }
    }
    return z > 0.0 ? 1.0 - tail : tail;
}

}  // namespace

double StudentT::scale() const { return std::sqrt(scale_sq); }

double StudentT::logpdf(double y) const {
    const double r = (y - loc) / std::sqrt(dof * scale_sq);
    return std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
           0.5 * std::log(dof * std::numbers::pi * scale_sq) - 0.5 * (dof + 1.0) * log1p_sq(r);
}

double StudentT::pdf(double y) const { return std::exp(logpdf(y)); }

double StudentT::cdf(double y) const { return std_t_cdf(dof, (y - loc) / scale()); }

double StudentT::quantile(double q) const {
    check_level(q);
    const double s = scale();
    const auto to_x = [&](double u) { return loc + s * std::sinh(u); };
    const auto f = [&](double x) { return cdf(x); };
    return invert(f, to_x, std::asinh(std::numeric_limits<double>::max() / 4.0 / std::max(s, 1.0)), q);
}

StudentT BivStudentT::marginal(int i) const {
    if (i < 0 || i >= dim()) throw InputError("marginal index out of range");
    return StudentT{dof, loc(i), shape(i, i)};
}

double InverseGamma::logpdf(double x) const {
    if (!(x > 0.0)) return -kInf;
    return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - scale / x;
}

double InverseGamma::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    if (x == kInf) return 1.0;
    const double z = scale / x;
    if (z == kInf) return 0.0;
    return boost::math::gamma_q(shape, z);
}

double InverseGamma::quantile(double q) const {
    check_level(q);
    // Search in log x around the mode, as far as the doubles reach on both sides.
    const double m = mode();
    const auto to_x = [m](double u) { return m * std::exp(u); };
    const auto f = [&](double x) { return cdf(x); };
    const double u_max = std::min(std::log(std::numeric_limits<double>::max() / m),
                                  std::log(m / std::numeric_limits<double>::min()));
    return invert(f, to_x, u_max, q);
}

double StudentTMixture::pdf(double y) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) acc += weights[i] * components[i].pdf(y);
    return acc;
}

double StudentTMixture::cdf(double y) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) acc += weights[i] * components[i].cdf(y);
    return acc;
}

double StudentTMixture::quantile(double q) const {
    check_level(q);
    if (components.empty()) throw InputError("quantile of an empty mixture");
    // Centre on the heaviest component, use the smallest scale for resolution.
    std::size_t top = 0;
    double s = components[0].scale();
    for (std::size_t i = 1; i < components.size(); ++i) {
        if (weights[i] > weights[top]) top = i;
        s = std::min(s, components[i].scale());
    }
    const double c = components[top].loc;
    const auto to_x = [&](double u) { return c + s * std::sinh(u); };
    const auto f = [&](double x) { return cdf(x); };
    return invert(f, to_x, std::asinh(std::numeric_limits<double>::max() / 4.0 / std::max(s, 1.0)), q);
}

}  // namespace volcp
