#pragma once

#include <Eigen/Dense>

namespace memkit {

enum class KernelKind { Gaussian, Epanechnikov };

// Bandwidth is expressed in trading days; on the rescaled time axis
// z_t = t/T it becomes h = bandwidth_days / T, so six months of 21-day
// trading months is bandwidth_days = 126.
struct SmootherConfig {
    int bandwidth_days = 126;
    KernelKind kernel = KernelKind::Gaussian;
};

// Nadaraya-Watson estimate of the slow component on rescaled time,
//   tau_t = sum_s y_s K((z_t - z_s)/h) / sum_s K((z_t - z_s)/h),
// renormalized afterwards to unit sample mean (the identification
// condition; the multiplicative slack is absorbed by mu at the driver
// level). Plain weights at the boundaries, no edge-kernel correction.
Eigen::VectorXd nw_smooth(const Eigen::VectorXd& targets, const SmootherConfig& config);

// Precision-weighted cross-sectional target for the common multivariate
// slow component: x_t = sum_j scaled(t,j) * w_j with w_j proportional to
// 1/sigma_j^2 and summing to one.
Eigen::VectorXd precision_weighted_target(const Eigen::MatrixXd& scaled,
                                          const Eigen::VectorXd& sigma2_diag);

}  // namespace memkit
