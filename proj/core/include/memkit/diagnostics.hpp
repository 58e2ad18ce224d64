#pragma once

#include <Eigen/Dense>

namespace memkit {

/**
 * Sample autocorrelations of a residual series with the +-1.96/sqrt(T)
 * reference band. acf[0] is always one; lags run to max_lag inclusive.
 */
struct AcfResult {
    Eigen::VectorXd acf;
    double band;
};

AcfResult acf(const Eigen::VectorXd& residuals, int max_lag);

/**
 * Ljung-Box style portmanteau result. Degrees of freedom are net of the
 * number of estimated short-run parameters: lags - n_params in the
 * univariate test, K^2 * lags - n_params in the multivariate one.
 */
struct LjungBoxResult {
    int lags;
    double statistic;
    int df;
    double pvalue;
};

// Q = T (T + 2) sum_{j<=m} rho_j^2 / (T - j), chi-square(m - n_params).
LjungBoxResult ljung_box(const Eigen::VectorXd& residuals, int lags, int n_params);

// Multivariate portmanteau with the small-sample weighting
// Q = T^2 sum_{j<=m} (T - j)^{-1} tr(C_j' C_0^{-1} C_j C_0^{-1}).
LjungBoxResult mv_portmanteau(const Eigen::MatrixXd& residuals, int lags, int n_params);

// Squared Pearson correlation between observed series and fitted
// conditional mean. Throws ConstantSeries when either input is constant.
double r_squared(const Eigen::VectorXd& observed, const Eigen::VectorXd& fitted);

}  // namespace memkit
