#include "memkit/dates.hpp"
#include "memkit/errors.hpp"
#include "memkit/json_io.hpp"
#include "memkit/params.hpp"
#include "memkit/rng.hpp"
#include "memkit/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace memkit;

namespace {

ObservationSeries make_series(DateOrdinal start, int n, double base, const std::string& label,
                              std::uint64_t seed = 1) {
    Rng rng(seed);
    std::vector<DateOrdinal> dates;
    Eigen::VectorXd values(n), returns(n);
    for (int t = 0; t < n; ++t) {
        dates.push_back(start + t);
        values[t] = base + rng.uniform01();
        returns[t] = rng.normal() * 0.01;
    }
    return ObservationSeries(std::move(dates), std::move(values), std::move(returns), label);
}

}  // namespace

TEST_CASE("dates: parse, format, ordinal round trip") {
    CHECK(parse_date("2013-08-02") == days_from_civil(2013, 8, 2));
    CHECK(format_date(parse_date("2021-04-13")) == "2021-04-13");
    CHECK(parse_date("02/08/2013", "%d/%m/%Y") == parse_date("2013-08-02"));
    CHECK_THROWS_AS(parse_date("2013-13-02"), InvalidArgument);
    CHECK_THROWS_AS(parse_date("2013-02-30"), InvalidArgument);
    CHECK_THROWS_AS(parse_date("not a date"), InvalidArgument);
    // civil round trip across leap years
    for (DateOrdinal d : {DateOrdinal(0), DateOrdinal(-10000), DateOrdinal(10957), DateOrdinal(20000)}) {
        int y, m, day;
        civil_from_days(d, y, m, day);
        CHECK(days_from_civil(y, m, day) == d);
    }
}

TEST_CASE("validate_panel: identity, intersection and typed errors") {
    const auto a = make_series(1000, 120, 10.0, "rkVol", 1);

    SUBCASE("identical dates leave T unchanged") {
        auto b = make_series(1000, 120, 12.0, "impVol", 2);
        // returns must agree with the first series on shared dates
        ObservationSeries b_synced(b.dates, b.values, a.returns, b.label);
        const AlignedPanel panel = validate_panel({a, b_synced});
        CHECK(panel.n_obs() == 120);
        CHECK(panel.n_series() == 2);
        CHECK(panel.values.col(0).isApprox(a.values));
        CHECK(panel.returns.isApprox(a.returns));
    }

    SUBCASE("overlapping spans intersect") {
        auto late = make_series(1060, 120, 12.0, "impVol", 3);
        ObservationSeries late_zero_ret(late.dates, late.values, Eigen::VectorXd::Zero(120), "impVol");
        const AlignedPanel panel = validate_panel({a, late_zero_ret});
        CHECK(panel.n_obs() == 60);  // dates 1060..1119
        CHECK(panel.dates.front() == 1060);
    }

    SUBCASE("too small intersection") {
        auto far = make_series(1100, 120, 12.0, "impVol", 4);
        ObservationSeries far_zero(far.dates, far.values, Eigen::VectorXd::Zero(120), "impVol");
        CHECK_THROWS_AS(validate_panel({a, far_zero}), EmptyIntersection);
    }

    SUBCASE("negative value rejected at construction") {
        Eigen::VectorXd bad = a.values;
        bad[5] = -0.1;
        CHECK_THROWS_AS(ObservationSeries(a.dates, bad, a.returns, "x"), NegativeValue);
    }

    SUBCASE("conflicting non-trivial returns") {
        Eigen::VectorXd other_returns = a.returns;
        other_returns[10] += 0.5;
        ObservationSeries conflicting(a.dates, a.values, other_returns, "arVol");
        CHECK_THROWS_AS(validate_panel({a, conflicting}), MismatchedReturns);
    }
}

TEST_CASE("parameter types enforce stationarity with typed errors") {
    CHECK(UniParams(0.7, 0.15, 0.05).beta1_star() == doctest::Approx(0.875));
    CHECK_THROWS_AS(UniParams(0.9, 0.15, 0.05), StationarityError);
    CHECK_THROWS_AS(UniParams(0.9, 0.2, -0.3), StationarityError);  // beta1* < 0
    CHECK_NOTHROW(UniParams(0.0, 0.0, 0.0));

    Eigen::VectorXd beta(2), gamma(2);
    beta << 0.7, 0.72;
    gamma << 0.1, 0.08;
    Eigen::MatrixXd alpha(2, 2);
    alpha << 0.10, 0.05, 0.05, 0.12;
    const VecParams p(beta, alpha, gamma);
    CHECK(p.spectral_radius() < 1.0);
    CHECK(p.spectral_radius() == doctest::Approx(0.9172).epsilon(1e-3));

    Eigen::MatrixXd explosive = alpha;
    explosive(0, 0) = 0.4;  // beta1*_11 = 1.15
    CHECK_THROWS_AS(VecParams(beta, explosive, gamma), StationarityError);

    // flat <-> struct round trip and naming
    const Eigen::VectorXd theta = p.flatten();
    CHECK(theta.size() == 8);
    const VecParams q = VecParams::from_flat(theta, 2);
    CHECK(q.alpha1.isApprox(p.alpha1));
    const auto names = VecParams::param_names(2);
    CHECK(names[0] == "beta1_1,1");
    CHECK(names[2] == "alpha1_1,2");
    CHECK(names[3] == "gamma1_1,1");
    CHECK(names[5] == "alpha1_2,1");
}

TEST_CASE("JSON round trips are bit-exact") {
    Rng rng(77);
    const auto series = make_series(12000, 80, 15.0, "arVol", 9);
    const ObservationSeries series2 = series_from_json(json_string(series));
    CHECK(series2.dates == series.dates);
    CHECK(series2.values == series.values);    // bitwise through Eigen ==
    CHECK(series2.returns == series.returns);
    CHECK(series2.label == series.label);

    auto b = make_series(12000, 80, 12.0, "impVol", 10);
    const AlignedPanel panel = validate_panel({series, ObservationSeries(b.dates, b.values, series.returns, b.label)});
    const AlignedPanel panel2 = panel_from_json(json_string(panel));
    CHECK(panel2.values == panel.values);
    CHECK(panel2.dates == panel.dates);

    FitResult fit;
    fit.params = UniParams(0.7, 0.15, 0.05);
    fit.mu = Eigen::VectorXd::Constant(1, 10.0 + rng.uniform01());
    fit.tau = Eigen::VectorXd::Ones(6) * (1.0 + 1e-17);
    fit.xi = Eigen::MatrixXd::Random(6, 1).cwiseAbs();
    fit.residuals = Eigen::MatrixXd::Random(6, 1).cwiseAbs();
    fit.sigma2 = Eigen::MatrixXd::Constant(1, 1, 0.15823902384);
    fit.avar = Eigen::MatrixXd::Identity(3, 3) * 1.234e-5;
    fit.rsq = Eigen::VectorXd::Constant(1, 0.67581234);
    fit.converged = true;
    fit.iterations = 17;
    const FitResult fit2 = fit_result_from_json(json_string(fit));
    CHECK(fit2.uni().beta1 == fit.uni().beta1);
    CHECK(fit2.xi == fit.xi);
    CHECK(fit2.sigma2 == fit.sigma2);
    CHECK(fit2.avar == fit.avar);
    CHECK(fit2.rsq == fit.rsq);
    CHECK(fit2.iterations == 17);

    // multivariate params variant
    Eigen::VectorXd beta(2), gamma(2);
    beta << 0.7, 0.72;
    gamma << 0.1, 0.08;
    Eigen::MatrixXd alpha(2, 2);
    alpha << 0.10, 0.05, 0.05, 0.12;
    fit.params = VecParams(beta, alpha, gamma);
    fit.xi = Eigen::MatrixXd::Random(6, 2).cwiseAbs();
    fit.residuals = fit.xi;
    fit.sigma2 = Eigen::MatrixXd::Identity(2, 2) * 0.2;
    fit.avar = Eigen::MatrixXd::Identity(8, 8);
    fit.rsq = Eigen::VectorXd::Constant(2, 0.5);
    fit.mu = Eigen::VectorXd::Constant(2, 3.0);
    const FitResult fit3 = fit_result_from_json(json_string(fit));
    CHECK(fit3.vec().alpha1 == alpha);
    CHECK(fit3.sigma2 == fit.sigma2);
}
