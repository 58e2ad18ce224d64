#pragma once

#include "memkit/distributions.hpp"

#include <Eigen/Dense>

namespace memkit {

/**
 * Goodness-of-fit test outcome. n_used counts the observations entering the
 * statistic: exact zeros are excluded (their CDF value is zero, which the
 * Anderson-Darling weight cannot absorb) and the exclusion is visible here.
 */
struct GofResult {
    double statistic;
    double pvalue;
    DistSpec dist;
    int n_used;
};

// Anderson-Darling test of residuals against a fully specified density:
// A^2 = -n - (1/n) sum (2i-1) [ln u_(i) + ln(1 - u_(n+1-i))], p-value from
// the asymptotic simple-hypothesis null.
GofResult ad_test(const Eigen::VectorXd& residuals, const DistSpec& spec);

// Cramer-von Mises test: W^2 = sum (u_(i) - (2i-1)/(2n))^2 + 1/(12n).
GofResult cvm_test(const Eigen::VectorXd& residuals, const DistSpec& spec);

// Asymptotic null CDFs, exposed for calibration checks.
double ad_asymptotic_cdf(double a2);
double cvm_asymptotic_cdf(double w2);

}  // namespace memkit
