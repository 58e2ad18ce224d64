#include "memkit/vmem.hpp"

#include "memkit/distributions.hpp"
#include "memkit/errors.hpp"
#include "memkit/mem.hpp"
#include "memkit/sim.hpp"
#include "memkit/special.hpp"
#include "memkit/spfit.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace memkit;

namespace {

VecParams bivariate_truth() {
    Eigen::VectorXd beta(2), gamma(2);
    beta << 0.70, 0.72;
    gamma << 0.10, 0.08;
    Eigen::MatrixXd alpha(2, 2);
    alpha << 0.10, 0.05, 0.05, 0.12;
    return VecParams(beta, alpha, gamma);
}

SimOutput bivariate_sim(std::uint64_t seed, int t_len, double rho = 0.4) {
    DgpSpec spec;
    spec.params = bivariate_truth();
    spec.mu = Eigen::VectorXd::Constant(2, 5.0);
    spec.error = {calibrate(DistKind::Gamma, 0.15), calibrate(DistKind::Gamma, 0.20)};
    Eigen::MatrixXd dep(2, 2);
    dep << 1.0, rho, rho, 1.0;
    spec.dependence = dep;
    spec.seed = seed;
    return simulate(spec, t_len);
}

Eigen::MatrixXd scale_by_means(const Eigen::MatrixXd& x) {
    return x.array().rowwise() / x.colwise().mean().array();
}

}  // namespace

TEST_CASE("vxi_filter") {
    SUBCASE("alpha = gamma = 0 keeps the paths at one") {
        Eigen::VectorXd beta(2), gamma(2);
        beta << 0.5, 0.7;
        gamma << 0.0, 0.0;
        const VecParams p(beta, Eigen::MatrixXd::Zero(2, 2), gamma);
        const Eigen::MatrixXd x = Eigen::MatrixXd::Random(60, 2).cwiseAbs();
        const VXiState state = vxi_filter(p, x, Eigen::VectorXd::Zero(60));
        CHECK((state.xi.array() - 1.0).abs().maxCoeff() == 0.0);
    }

    SUBCASE("K = 1 matches the univariate filter") {
        const SimOutput sim = bivariate_sim(81, 400);
        const Eigen::VectorXd x = sim.panel.values.col(0) / sim.panel.values.col(0).mean();
        const UniParams up(0.6, 0.2, 0.1);
        const VecParams vp(Eigen::VectorXd::Constant(1, 0.6), Eigen::MatrixXd::Constant(1, 1, 0.2),
                           Eigen::VectorXd::Constant(1, 0.1));
        const XiState s1 = xi_filter(up, x, sim.neg_indicator);
        const VXiState s2 = vxi_filter(vp, x, sim.neg_indicator);
        CHECK((s1.xi - s2.xi.col(0)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((s1.v - s2.v.col(0)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((s1.v_minus - s2.v_minus.col(0)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("diagonal alpha decouples into univariate filters") {
        const SimOutput sim = bivariate_sim(82, 300);
        const Eigen::MatrixXd x = scale_by_means(sim.panel.values);
        Eigen::VectorXd beta(2), gamma(2);
        beta << 0.6, 0.55;
        gamma << 0.12, 0.06;
        Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(2, 2);
        alpha(0, 0) = 0.2;
        alpha(1, 1) = 0.25;
        const VecParams vp(beta, alpha, gamma);
        const VXiState joint = vxi_filter(vp, x, sim.neg_indicator);
        for (int i = 0; i < 2; ++i) {
            const XiState single = xi_filter(UniParams(beta[i], alpha(i, i), gamma[i]), x.col(i),
                                             sim.neg_indicator);
            CHECK((joint.xi.col(i) - single.xi).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("stacked gradient matches finite differences") {
    const SimOutput sim = bivariate_sim(83, 250);
    const Eigen::MatrixXd x = scale_by_means(sim.panel.values);
    const VecParams p0 = bivariate_truth();
    const Eigen::MatrixXd grad = vxi_gradient(p0, x, sim.neg_indicator);
    const auto eq = equation_of(2);
    const Eigen::VectorXd theta0 = p0.flatten();

    for (int j = 0; j < theta0.size(); ++j) {
        auto probe = [&](const std::vector<double>& th) {
            Eigen::VectorXd theta(th.size());
            for (std::size_t i = 0; i < th.size(); ++i) theta[static_cast<Eigen::Index>(i)] = th[i];
            const VXiState s = vxi_filter(VecParams::from_flat(theta, 2), x, sim.neg_indicator);
            double acc = 0.0;
            for (int t = 0; t < 250; ++t) acc += std::sin(0.05 * t) * s.xi(t, eq[static_cast<std::size_t>(j)]);
            return acc;
        };
        std::vector<double> th(theta0.data(), theta0.data() + theta0.size());
        const std::vector<double> fd = oracles::central_fd(probe, th, 1e-6);
        double analytic = 0.0;
        for (int t = 0; t < 250; ++t) analytic += std::sin(0.05 * t) * grad(t, j);
        CHECK(std::fabs(analytic - fd[static_cast<std::size_t>(j)]) <
              1e-6 * std::max(1.0, std::fabs(analytic)));
    }
}

TEST_CASE("criterion vanishes on a degenerate-noise path") {
    DgpSpec spec;
    spec.params = bivariate_truth();
    spec.mu = Eigen::VectorXd::Constant(2, 1.0);
    spec.error = {calibrate(DistKind::Gamma, 1e-9), calibrate(DistKind::Gamma, 1e-9)};
    spec.seed = 84;
    const SimOutput sim = simulate(spec, 400);
    const Eigen::VectorXd g = vgmm_criterion(bivariate_truth(), sim.panel.values, sim.neg_indicator,
                                             Eigen::MatrixXd::Identity(2, 2));
    CHECK(g.cwiseAbs().maxCoeff() < 1e-3);  // eps deviates from 1 by ~sqrt(1e-9)
}

TEST_CASE("vgmm_fit on simulated bivariate data") {
    const SimOutput sim = bivariate_sim(85, 3000);
    const Eigen::MatrixXd x = scale_by_means(sim.panel.values);
    const FitResult fit = vgmm_fit(x, sim.neg_indicator);
    REQUIRE(fit.converged);

    SUBCASE("parameters near truth") {
        const Eigen::VectorXd err = fit.vec().flatten() - bivariate_truth().flatten();
        CHECK(err.cwiseAbs().maxCoeff() < 0.08);
    }
    SUBCASE("criterion at the solution") {
        CHECK(vgmm_criterion(fit.vec(), x, sim.neg_indicator, fit.sigma2).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("Sigma and correlations are well-formed") {
        CHECK((fit.sigma2 - fit.sigma2.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.sigma2);
        CHECK(es.eigenvalues().minCoeff() >= 0.0);
        const Eigen::MatrixXd rho = fit.residual_correlation();
        CHECK(rho(0, 1) <= 1.0);
        CHECK(rho(0, 1) >= -1.0);
        CHECK(rho(0, 1) == doctest::Approx(0.4).epsilon(0.25));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(fit.avar);
        CHECK(ea.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("diagonal restriction matches independent univariate fits") {
    DgpSpec spec;
    spec.params = VecParams(
        (Eigen::VectorXd(2) << 0.65, 0.70).finished(),
        (Eigen::MatrixXd(2, 2) << 0.18, 0.0, 0.0, 0.15).finished(),
        (Eigen::VectorXd(2) << 0.08, 0.12).finished());
    spec.mu = Eigen::VectorXd::Constant(2, 3.0);
    spec.error = {calibrate(DistKind::Gamma, 0.15), calibrate(DistKind::Gamma, 0.25)};
    spec.seed = 86;
    const SimOutput sim = simulate(spec, 2500);
    const Eigen::MatrixXd x = scale_by_means(sim.panel.values);

    VmemFitOptions options;
    options.diagonal_alpha = true;
    options.diagonal_sigma = true;
    const FitResult joint = vgmm_fit(x, sim.neg_indicator, options);

    for (int i = 0; i < 2; ++i) {
        const FitResult single = fit_mem(x.col(i), sim.neg_indicator);
        CHECK(std::fabs(joint.vec().beta1_diag[i] - single.uni().beta1) < 1e-4);
        CHECK(std::fabs(joint.vec().alpha1(i, i) - single.uni().alpha1) < 1e-4);
        CHECK(std::fabs(joint.vec().gamma1_diag[i] - single.uni().gamma1) < 1e-4);
        CHECK(joint.vec().alpha1(i, 1 - i) == 0.0);
    }
}

TEST_CASE("wald_test") {
    const SimOutput sim = bivariate_sim(87, 1500);
    const Eigen::MatrixXd x = scale_by_means(sim.panel.values);
    FitResult fit = vgmm_fit(x, sim.neg_indicator);

    SUBCASE("zero restriction gives a zero statistic and unit p-value") {
        // zero out alpha_12 in a copy and test exactly that index
        VecParams p = fit.vec();
        p.alpha1(0, 1) = 0.0;
        fit.params = p;
        const WaldResult w = wald_test(fit, {2}, 1);
        CHECK(w.statistic == 0.0);
        CHECK(w.pvalue == 1.0);
    }
    SUBCASE("paper arithmetic at df = 3 and the df = 4 oracle") {
        // the p-value transform is exactly the chi-square upper tail
        const WaldResult w3{12.3104, 3, chi_square_sf(12.3104, 3)};
        CHECK(w3.pvalue == doctest::Approx(0.0064).epsilon(2e-3));
        CHECK(std::fabs(chi_square_sf(12.3104, 4) - oracles::chi2_sf_closed_form(12.3104, 4)) < 1e-10);
    }
    SUBCASE("typed errors") {
        CHECK_THROWS_AS(wald_test(fit, {0, 1}, 0), NonPositiveDf);
        CHECK_THROWS_AS(wald_test(fit, {0, 0}, 2), SingularSubmatrix);
        CHECK_THROWS_AS(wald_test(fit, {99}, 1), InvalidArgument);
    }
}

TEST_CASE("vforecast") {
    const VecParams p = bivariate_truth();
    SUBCASE("unit state is a fixed point") {
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
        for (int h : {1, 3, 25})
            CHECK((vforecast(p, ones, ones, 0.0, h) - ones).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("K = 1 reduces to the univariate forecast") {
        const VecParams v1(Eigen::VectorXd::Constant(1, 0.7), Eigen::MatrixXd::Constant(1, 1, 0.15),
                           Eigen::VectorXd::Constant(1, 0.05));
        const UniParams u1(0.7, 0.15, 0.05);
        for (int h : {1, 2, 10}) {
            const double vf = vforecast(v1, Eigen::VectorXd::Constant(1, 1.3),
                                        Eigen::VectorXd::Constant(1, 1.6), 1.0, h)[0];
            CHECK(vf == doctest::Approx(forecast_xi(u1, 1.3, 1.6, 1.0, h)).epsilon(1e-14));
        }
    }
    SUBCASE("multi-step equals the explicit matrix-power expression") {
        const Eigen::MatrixXd star = p.beta1_star();
        const Eigen::VectorXd xi_t = (Eigen::VectorXd(2) << 1.4, 0.8).finished();
        const Eigen::VectorXd x_t = (Eigen::VectorXd(2) << 1.7, 0.9).finished();
        const Eigen::VectorXd one_step = vforecast(p, xi_t, x_t, 1.0, 1);
        Eigen::MatrixXd star_pow = Eigen::MatrixXd::Identity(2, 2);
        for (int h = 2; h <= 30; ++h) {
            star_pow *= star;
            const Eigen::VectorXd expected =
                Eigen::VectorXd::Ones(2) + star_pow * (one_step - Eigen::VectorXd::Ones(2));
            CHECK((vforecast(p, xi_t, x_t, 1.0, h) - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
        // decay at the spectral-radius rate
        const double rho = p.spectral_radius();
        const Eigen::VectorXd far = vforecast(p, xi_t, x_t, 1.0, 60);
        CHECK((far - Eigen::VectorXd::Ones(2)).norm() <
              4.0 * std::pow(rho, 59) * (one_step - Eigen::VectorXd::Ones(2)).norm());
    }
}
