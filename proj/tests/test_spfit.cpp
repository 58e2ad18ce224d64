#include "memkit/spfit.hpp"

#include "memkit/distributions.hpp"
#include "memkit/errors.hpp"
#include "memkit/rng.hpp"
#include "memkit/sim.hpp"

#include <doctest.h>

#include <cmath>

using namespace memkit;

namespace {

DgpSpec univariate_dgp(std::uint64_t seed) {
    DgpSpec spec;
    spec.params = UniParams(0.705, 0.10, 0.15);  // beta1* = 0.88
    spec.mu = Eigen::VectorXd::Constant(1, 10.0);
    spec.error = {calibrate(DistKind::Gamma, 0.15)};
    spec.seed = seed;
    return spec;
}

DgpSpec trivariate_dgp(std::uint64_t seed) {
    DgpSpec spec;
    spec.params = VecParams(
        (Eigen::VectorXd(2) << 0.70, 0.72).finished(),
        (Eigen::MatrixXd(2, 2) << 0.10, 0.05, 0.05, 0.12).finished(),
        (Eigen::VectorXd(2) << 0.10, 0.08).finished());
    spec.mu = (Eigen::VectorXd(2) << 10.0, 16.0).finished();
    spec.error = {calibrate(DistKind::Gamma, 0.15), calibrate(DistKind::Gamma, 0.20)};
    Eigen::MatrixXd dep(2, 2);
    dep << 1.0, 0.5, 0.5, 1.0;
    spec.dependence = dep;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("constant tau is recovered within smoothing noise") {
    DgpSpec spec = univariate_dgp(101);
    const SimOutput sim = simulate(spec, 3000);
    SpFitOptions options;  // h = 126 days, Gaussian
    const FitResult fit = fit_spmem(sim.panel.series(0), options);
    REQUIRE(fit.converged);
    CHECK((fit.tau.array() - 1.0).abs().maxCoeff() < 0.05);
    // close to the base fit
    const FitResult base = fit_mem_series(sim.panel.series(0));
    CHECK((fit.uni().flatten() - base.uni().flatten()).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("sinusoidal tau recovery stays within the oracle-derived envelope") {
    // One-shot kernel smoothing of the clean ratio already carries
    // attenuation bias h^2 tau''/2 ~ 0.042 at the extremes; the alternation
    // fixpoint amplifies it by ~1/(1-(kappa-1)lambda). Median max errors
    // measured across seeded replications are ~0.18 (sine phase) and the
    // fitted parameters stay near truth; the envelope freezes those facts.
    std::vector<double> max_errs;
    for (std::uint64_t r = 0; r < 5; ++r) {
        DgpSpec spec = univariate_dgp(split_seed(7000, r));
        spec.tau_profile = TauProfile::sinusoid(0.3, 2.0);
        const SimOutput sim = simulate(spec, 3000);
        const FitResult fit = fit_spmem(sim.panel.series(0), SpFitOptions{});
        REQUIRE(fit.converged);
        max_errs.push_back((fit.tau - sim.tau).cwiseAbs().maxCoeff());
        CHECK(std::fabs(fit.uni().beta1_star() - 0.88) < 0.06);
        CHECK(std::fabs(fit.uni().alpha1 - 0.10) < 0.06);
    }
    std::sort(max_errs.begin(), max_errs.end());
    CHECK(max_errs[max_errs.size() / 2] < 0.30);
    // the slow component is tracked: correlation of tau-hat with truth
    DgpSpec spec = univariate_dgp(808);
    spec.tau_profile = TauProfile::sinusoid(0.3, 2.0);
    const SimOutput sim = simulate(spec, 3000);
    const FitResult fit = fit_spmem(sim.panel.series(0), SpFitOptions{});
    const Eigen::ArrayXd a = fit.tau.array() - fit.tau.mean();
    const Eigen::ArrayXd b = sim.tau.array() - sim.tau.mean();
    CHECK(a.cwiseProduct(b).sum() / std::sqrt((a * a).sum() * (b * b).sum()) > 0.95);
}

TEST_CASE("outer loop control semantics") {
    DgpSpec spec = univariate_dgp(103);
    const SimOutput sim = simulate(spec, 900);

    SUBCASE("very loose tolerance stops after one iteration") {
        SpFitOptions options;
        options.outer_tol = 1.0;
        const FitResult fit = fit_spmem(sim.panel.series(0), options);
        CHECK(fit.iterations == 1);
        // first-iteration changes are well below 100%, so this converged
        CHECK(fit.converged);
    }
    SUBCASE("iteration cap exceeded reports converged = false, no throw") {
        SpFitOptions options;
        options.max_outer_iter = 1;
        options.outer_tol = 1e-12;
        const FitResult fit = fit_spmem(sim.panel.series(0), options);
        CHECK_FALSE(fit.converged);
        CHECK(fit.iterations == 1);
    }
}

TEST_CASE("tau invariants along the alternation") {
    DgpSpec spec = univariate_dgp(104);
    spec.tau_profile = TauProfile::sinusoid(0.2, 1.0);
    const SimOutput sim = simulate(spec, 1200);
    const FitResult fit = fit_spmem(sim.panel.series(0), SpFitOptions{});
    CHECK(std::fabs(fit.tau.mean() - 1.0) < 1e-12);
    // identification triple product: mean(mu tau xi) within 2% of mean(x)
    const double lhs = (fit.mu[0] * fit.tau.array() * fit.xi.col(0).array()).mean();
    const double rhs = sim.panel.values.col(0).mean();
    CHECK(std::fabs(lhs / rhs - 1.0) < 0.02);
}

TEST_CASE("infinite bandwidth reproduces the base fit") {
    DgpSpec spec = univariate_dgp(105);
    const int t_len = 600;
    const SimOutput sim = simulate(spec, t_len);
    SpFitOptions options;
    options.smoother.bandwidth_days = 10 * t_len;
    const FitResult sp = fit_spmem(sim.panel.series(0), options);
    const FitResult base = fit_mem_series(sim.panel.series(0));
    CHECK((sp.uni().flatten() - base.uni().flatten()).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("common slow component in the bivariate alternation") {
    DgpSpec spec = trivariate_dgp(106);
    spec.tau_profile = TauProfile::sinusoid(0.3, 2.0);
    const SimOutput sim = simulate(spec, 3000);
    const AlignedPanel& panel = sim.panel;

    SpFitOptions options;
    options.smoother.bandwidth_days = 63;  // 3 months
    const FitResult sp = fit_spvmem(panel, options);
    REQUIRE(sp.converged);
    CHECK(std::fabs(sp.tau.mean() - 1.0) < 1e-12);

    // tau-hat tracks the common component
    const Eigen::ArrayXd a = sp.tau.array() - sp.tau.mean();
    const Eigen::ArrayXd b = sim.tau.array() - sim.tau.mean();
    CHECK(a.cwiseProduct(b).sum() / std::sqrt((a * a).sum() * (b * b).sum()) > 0.95);

    // absorbing tau lowers measured persistence relative to the base vMEM
    const FitResult base = fit_vmem_panel(panel);
    const Eigen::VectorXd b_sp = sp.beta1_star();
    const Eigen::VectorXd b_base = base.beta1_star();
    for (int i = 0; i < 2; ++i) CHECK(b_sp[i] < b_base[i]);

    // triple product identification per series
    for (int i = 0; i < 2; ++i) {
        const double lhs = (sp.mu[i] * sp.tau.array() * sp.xi.col(i).array()).mean();
        CHECK(std::fabs(lhs / panel.values.col(i).mean() - 1.0) < 0.02);
    }
}

TEST_CASE("preconditions") {
    DgpSpec spec = univariate_dgp(107);
    const SimOutput sim = simulate(spec, 200);
    CHECK_THROWS_AS(fit_spmem(sim.panel.series(0), SpFitOptions{}), InvalidArgument);
}
