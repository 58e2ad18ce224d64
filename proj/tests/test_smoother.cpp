#include "memkit/smoother.hpp"

#include "memkit/errors.hpp"
#include "memkit/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace memkit;

namespace {

// Brute-force double-loop evaluation straight from the estimator formula,
// including the unit-mean renormalization.
Eigen::VectorXd nw_bruteforce(const Eigen::VectorXd& y, const SmootherConfig& config) {
    const auto t_len = static_cast<int>(y.size());
    const double h = static_cast<double>(config.bandwidth_days) / t_len;
    Eigen::VectorXd out(t_len);
    for (int t = 0; t < t_len; ++t) {
        double num = 0.0, den = 0.0;
        for (int s = 0; s < t_len; ++s) {
            const double zt = static_cast<double>(t) / t_len;
            const double zs = static_cast<double>(s) / t_len;
            const double u = (zt - zs) / h;
            const double w = config.kernel == KernelKind::Gaussian
                                 ? std::exp(-0.5 * u * u)
                                 : (std::fabs(u) < 1.0 ? 1.0 - u * u : 0.0);
            num += y[s] * w;
            den += w;
        }
        out[t] = num / den;
    }
    return out / out.mean();
}

}  // namespace

TEST_CASE("constant targets smooth to the unit path") {
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(400, 3.7);
    const Eigen::VectorXd tau = nw_smooth(y, SmootherConfig{30, KernelKind::Gaussian});
    CHECK((tau.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("huge bandwidth flattens the estimate") {
    Rng rng(8);
    const int t_len = 400;
    Eigen::VectorXd y(t_len);
    for (int t = 0; t < t_len; ++t) y[t] = 0.5 + rng.uniform01();
    const Eigen::VectorXd tau = nw_smooth(y, SmootherConfig{10 * t_len, KernelKind::Gaussian});
    CHECK((tau.array() - 1.0).abs().maxCoeff() < 1e-3);
}

TEST_CASE("matches the brute-force double loop") {
    const int t_len = 300;
    Eigen::VectorXd ramp(t_len);
    for (int t = 0; t < t_len; ++t) ramp[t] = t + 1.0;
    for (KernelKind kernel : {KernelKind::Gaussian, KernelKind::Epanechnikov}) {
        const SmootherConfig config{25, kernel};
        const Eigen::VectorXd fast = nw_smooth(ramp, config);
        const Eigen::VectorXd slow = nw_bruteforce(ramp, config);
        CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-12);
    }
    Rng rng(9);
    Eigen::VectorXd noisy(t_len);
    for (int t = 0; t < t_len; ++t) noisy[t] = rng.gamma(2.0);
    const Eigen::VectorXd fast = nw_smooth(noisy, SmootherConfig{40, KernelKind::Gaussian});
    const Eigen::VectorXd slow = nw_bruteforce(noisy, SmootherConfig{40, KernelKind::Gaussian});
    CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unit sample mean and positive-scale invariance") {
    Rng rng(10);
    const int t_len = 350;
    Eigen::VectorXd y(t_len);
    for (int t = 0; t < t_len; ++t) y[t] = rng.gamma(3.0);
    const SmootherConfig config{30, KernelKind::Gaussian};
    const Eigen::VectorXd tau = nw_smooth(y, config);
    CHECK(std::fabs(tau.mean() - 1.0) < 1e-12);
    CHECK(tau.minCoeff() > 0.0);
    const Eigen::VectorXd tau_scaled = nw_smooth(17.3 * y, config);
    CHECK((tau - tau_scaled).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("preconditions") {
    const Eigen::VectorXd y = Eigen::VectorXd::Ones(100);
    CHECK_THROWS_AS(nw_smooth(y, SmootherConfig{3, KernelKind::Gaussian}), InvalidArgument);
    CHECK_THROWS_AS(nw_smooth(y, SmootherConfig{60, KernelKind::Gaussian}), InvalidArgument);
    Eigen::VectorXd negative = y;
    negative[4] = -0.5;
    CHECK_THROWS_AS(nw_smooth(negative, SmootherConfig{20, KernelKind::Gaussian}), InvalidArgument);
}

TEST_CASE("precision-weighted target") {
    SUBCASE("K = 1 passes the series through") {
        Eigen::MatrixXd x(5, 1);
        x << 1.0, 2.0, 3.0, 4.0, 5.0;
        const Eigen::VectorXd target = precision_weighted_target(x, Eigen::VectorXd::Constant(1, 0.3));
        CHECK((target - x.col(0)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("equal variances give the cross-sectional average") {
        Eigen::MatrixXd x(2, 3);
        x << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
        const Eigen::VectorXd target = precision_weighted_target(x, Eigen::VectorXd::Constant(3, 0.7));
        CHECK(target[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(target[1] == doctest::Approx(5.0).epsilon(1e-15));
    }
    SUBCASE("hand-computed weights") {
        // sigma^2 = (1, 4) -> weights (0.8, 0.2); inputs (2, 6) -> 2.8
        Eigen::MatrixXd x(1, 2);
        x << 2.0, 6.0;
        Eigen::VectorXd s2(2);
        s2 << 1.0, 4.0;
        CHECK(precision_weighted_target(x, s2)[0] == doctest::Approx(2.8).epsilon(1e-15));
    }
    SUBCASE("zero variance is typed") {
        Eigen::MatrixXd x(1, 2);
        x << 2.0, 6.0;
        Eigen::VectorXd s2(2);
        s2 << 1.0, 0.0;
        CHECK_THROWS_AS(precision_weighted_target(x, s2), ZeroVariance);
    }
}
