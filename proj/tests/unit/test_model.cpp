#include "oracles.hpp"
#include "helpers.hpp"

#include "volcp/error.hpp"
#include "volcp/model.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace volcp;
using volcp::testing::ar1_path;
using volcp::testing::rel_err;
using volcp::testing::rel_err_norm;

TEST_SUITE("model") {

TEST_CASE("empty segment holds the prior") {
    Hyperparams h;  // delta0 = 10, delta1 = 0.02
    const auto s = SegmentStats::empty(h);
    CHECK(s.count == 0);
    CHECK(s.sum_sq == 0.0);
    CHECK(s.cov_factor(0, 0) == 100.0);
    CHECK(s.cov_factor(1, 1) == doctest::Approx(4e-4).epsilon(1e-15));
    CHECK(s.cov_factor(0, 1) == 0.0);
    CHECK(s.cross.isZero());
    CHECK(s.mean().isZero());

    Hyperparams no_mu;
    no_mu.include_mu = false;
    no_mu.delta1 = 1.0;
    const auto s1 = SegmentStats::empty(no_mu);
    CHECK(s1.dim() == 1);
    CHECK(s1.cov_factor(0, 0) == 1.0);
    CHECK(s1.cross(0) == 0.0);
}

TEST_CASE("one rank-one update matches direct 2x2 inversion") {
    Hyperparams h;
    const auto s = SegmentStats::empty(h).updated(0.01, 0.02);
    Eigen::Matrix2d prec = Eigen::Matrix2d::Zero();
    prec(0, 0) = 1.0 / 100.0;
    prec(1, 1) = 1.0 / 4e-4;
    Eigen::Vector2d reg(1.0, 0.02);
    prec += reg * reg.transpose();
    // Closed-form 2x2 inverse.
    const double det = prec(0, 0) * prec(1, 1) - prec(0, 1) * prec(1, 0);
    Eigen::Matrix2d want;
    want << prec(1, 1) / det, -prec(0, 1) / det, -prec(1, 0) / det, prec(0, 0) / det;
    CHECK(rel_err_norm(Eigen::Matrix2d(s.cov_factor), want) < 1e-12);
    CHECK(s.count == 1);
    CHECK(s.sum_sq == doctest::Approx(1e-4));
    CHECK(s.cross(0) == doctest::Approx(0.01));
    CHECK(s.cross(1) == doctest::Approx(0.0002));
}

TEST_CASE("recursion matches full design-matrix assembly") {
    Rng rng(11, 0);
    for (int rep = 0; rep < 50; ++rep) {
        Hyperparams h;
        h.include_mu = rep % 2 == 0;
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 50);
        const auto y = ar1_path(rng, n, 0.001, 0.1, 0.005 + 0.1 * rng.uniform());
        auto s = SegmentStats::empty(h);
        for (std::size_t i = 1; i <= n; ++i) {
            s.absorb(y[i], y[i - 1]);
            REQUIRE(s.count == static_cast<std::int64_t>(i));
            // Symmetric and positive definite after every update.
            CHECK(std::abs(s.cov_factor(0, s.dim() - 1) - s.cov_factor(s.dim() - 1, 0)) <= 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(s.cov_factor));
            CHECK(eig.eigenvalues().minCoeff() > 0.0);
        }
        const auto d = oracle::direct_segment(y, 1, n, h);
        const auto [a_st, b_st] = shape_scale(s, h);
        CHECK(rel_err_norm(Eigen::MatrixXd(s.cov_factor), d.V) < 1e-9);
        CHECK(rel_err_norm(Eigen::VectorXd(s.mean()), d.w) < 1e-9);
        CHECK(rel_err(a_st, d.a_st) < 1e-12);
        CHECK(rel_err(b_st, d.b_st) < 1e-9);
        CHECK(b_st >= h.b);
    }
}

TEST_CASE("shape and scale") {
    Hyperparams h;
    const auto empty = shape_scale(SegmentStats::empty(h), h);
    CHECK(empty.shape == h.a);
    CHECK(empty.scale == h.b);

    const std::vector<double> y{0.0, 0.03};
    const auto s = SegmentStats::empty(h).updated(0.03, 0.0);
    const auto got = shape_scale(s, h);
    const auto d = oracle::direct_segment(y, 1, 1, h);
    CHECK(got.shape == h.a + 0.5);
    CHECK(rel_err(got.scale, d.b_st) < 1e-12);
}

TEST_CASE("all-zero data stays finite") {
    Hyperparams h;
    auto s = SegmentStats::empty(h);
    for (int i = 0; i < 100; ++i) s.absorb(0.0, 0.0);
    const auto st = predictive(s, h, 0.0);
    CHECK(std::isfinite(st.logpdf(0.0)));
    CHECK(shape_scale(s, h).scale == h.b);
}

TEST_CASE("non-finite update is rejected") {
    Hyperparams h;
    auto s = SegmentStats::empty(h);
    CHECK_THROWS_AS(s.absorb(std::nan(""), 0.0), InputError);
    CHECK_THROWS_AS(s.absorb(0.0, INFINITY), InputError);
}

TEST_CASE("prior predictive") {
    Hyperparams h;
    const double y_t = 0.013;
    const auto st = predictive(SegmentStats::empty(h), h, y_t);
    CHECK(st.dof == 2.0 * h.a);
    CHECK(st.loc == 0.0);
    const double want = (h.b / h.a) * (1.0 + h.delta0 * h.delta0 + h.delta1 * h.delta1 * y_t * y_t);
    CHECK(rel_err(st.scale_sq, want) < 1e-14);
}

TEST_CASE("predictive dof grows by one per observation") {
    Hyperparams h;
    Rng rng(3, 0);
    const auto y = ar1_path(rng, 30, 0, 0, 0.02);
    auto s = SegmentStats::empty(h);
    for (std::size_t k = 1; k <= 30; ++k) {
        s.absorb(y[k], y[k - 1]);
        CHECK(predictive(s, h, y[k]).dof == doctest::Approx(2.0 * h.a + static_cast<double>(k)).epsilon(1e-15));
    }
}

TEST_CASE("intercept-free predictive matches scalar formulas") {
    Rng rng(5, 0);
    for (int rep = 0; rep < 50; ++rep) {
        Hyperparams h;
        h.include_mu = false;
        h.delta1 = 0.01 + rng.uniform();
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 40);
        const auto y = ar1_path(rng, n, 0, 0.2, 0.01 + 0.05 * rng.uniform());
        auto s = SegmentStats::empty(h);
        for (std::size_t i = 1; i <= n; ++i) s.absorb(y[i], y[i - 1]);
        const auto st = predictive(s, h, y[n]);
        const auto want = oracle::scalar_predictive(y, 0, n, h.a, h.b, 1.0 / (h.delta1 * h.delta1));
        CHECK(rel_err(st.dof, want.dof) < 1e-10);
        CHECK(std::abs(st.loc - want.loc) <= 1e-10 * std::max(1.0, std::abs(want.loc)));
        CHECK(rel_err(st.scale_sq, want.scale_sq) < 1e-10);
    }
}

TEST_CASE("Student-t log density") {
    const StudentT cauchy{1.0, 0.0, 1.0};
    CHECK(cauchy.logpdf(0.0) == doctest::Approx(-std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK(cauchy.logpdf(0.0) == doctest::Approx(-1.1447298858494002));

    const StudentT st{4.5, 0.3, 0.02};
    for (double d : {0.01, 0.5, 3.0, 1e6}) CHECK(st.logpdf(0.3 + d) == st.logpdf(0.3 - d));

    // Finite far into the tails, including tiny dof.
    const StudentT heavy{1e-3, 0.0, 1e-4};
    CHECK(std::isfinite(heavy.logpdf(1e300)));
    CHECK(std::isfinite(heavy.logpdf(-1e300)));
}

TEST_CASE("Student-t densities integrate to one") {
    for (const StudentT& st : {StudentT{3.0, 0.0, 1.0}, StudentT{7.5, -0.2, 0.004}, StudentT{1.001, 0.0, 2.0},
                               StudentT{200.0, 0.01, 1e-6}, StudentT{1e-3, 0.0, 0.2}}) {
        CAPTURE(st.dof);
        CHECK(std::abs(oracle::student_t_mass(st) - 1.0) < 1e-6);
    }
}

TEST_CASE("parameter posterior") {
    Hyperparams h;
    const auto empty = param_posterior(SegmentStats::empty(h), h);
    CHECK(empty.loc.isZero());
    CHECK(rel_err_norm(Eigen::MatrixXd(empty.shape), Eigen::MatrixXd((h.b / h.a) * h.prior_cov())) < 1e-15);

    Rng rng(8, 0);
    const auto y = ar1_path(rng, 40, 0.001, 0.0, 0.02);
    auto s = SegmentStats::empty(h);
    for (std::size_t i = 1; i < y.size(); ++i) s.absorb(y[i], y[i - 1]);
    const auto post = param_posterior(s, h);
    const auto [a_st, b_st] = shape_scale(s, h);
    for (int i = 0; i < 2; ++i) {
        const auto m = post.marginal(i);
        CHECK(m.dof == 2.0 * a_st);
        CHECK(m.loc == s.mean()(i));
        CHECK(rel_err(m.scale_sq, (b_st / a_st) * s.cov_factor(i, i)) < 1e-14);
    }

    Hyperparams no_mu;
    no_mu.include_mu = false;
    CHECK_THROWS_AS(param_posterior(SegmentStats::empty(no_mu), no_mu), InputError);
}

TEST_CASE("AR coefficient credible interval is calibrated") {
    // Weakly informative prior so the data dominate.
    Hyperparams h{1.0, 1.0, 1.0, 1.0, true};
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed, 42);
        const auto y = ar1_path(rng, 400, 0.0, 0.3, 1.0);
        auto s = SegmentStats::empty(h);
        for (std::size_t i = 1; i < y.size(); ++i) s.absorb(y[i], y[i - 1]);
        const auto alpha = param_posterior(s, h).marginal(1);
        if (alpha.quantile(0.025) <= 0.3 && 0.3 <= alpha.quantile(0.975)) ++covered;
    }
    CHECK(covered >= 90);
}

TEST_CASE("sigma^2 posterior") {
    Hyperparams h;
    const auto prior = sigma2_posterior(SegmentStats::empty(h), h);
    CHECK(prior.shape == h.a);
    CHECK(prior.scale == h.b);

    const InverseGamma ig{3.0, 2.0};
    CHECK(ig.mode() == doctest::Approx(0.5));
    CHECK(0.5 * std::log(ig.mode()) == doctest::Approx(0.5 * std::log(2.0 / 4.0)));
    // Integer shape: P(X <= x) = Q(3, 2/x) = e^{-z}(1 + z + z^2/2), z = 2/x.
    const auto closed_cdf = [](double x) {
        const double z = 2.0 / x;
        return std::exp(-z) * (1.0 + z + 0.5 * z * z);
    };
    CHECK(std::abs(closed_cdf(ig.quantile(0.025)) - 0.025) < 1e-8);
    CHECK(std::abs(closed_cdf(ig.quantile(0.975)) - 0.975) < 1e-8);
}

TEST_CASE("quantiles") {
    const StudentT st{5.0, 0.7, 0.09};
    CHECK(st.quantile(0.5) == doctest::Approx(0.7).epsilon(1e-12));

    const InverseGamma ig11{1.0, 1.0};
    CHECK(ig11.cdf(2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(ig11.quantile(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-9));

    Rng rng(21, 0);
    for (int i = 0; i < 200; ++i) {
        const StudentT t{0.5 + 20.0 * rng.uniform(), rng.normal(), 0.01 + rng.uniform()};
        const double x = t.loc + 3.0 * rng.normal() * t.scale();
        const double back = t.quantile(t.cdf(x));
        CHECK(std::abs(back - x) <= 1e-6 * std::max(1.0, std::abs(x)));
        const InverseGamma g{0.5 + 10.0 * rng.uniform(), 0.01 + rng.uniform()};
        const double xi = g.quantile(0.05 + 0.9 * rng.uniform());
        CHECK(std::abs(g.quantile(g.cdf(xi)) - xi) <= 1e-6 * std::max(1.0, xi));
    }
    CHECK_THROWS_AS(st.quantile(0.0), InputError);
    CHECK_THROWS_AS(st.quantile(1.0), InputError);
    CHECK_THROWS_AS(ig11.quantile(-0.1), InputError);

    // Tiny dof: the quantile lies past the finite doubles.
    const StudentT heavy{1e-3, 0.0, 1.0};
    CHECK(std::isinf(heavy.quantile(0.975)));
    CHECK(heavy.quantile(0.975) > 0.0);
}

}  // TEST_SUITE
