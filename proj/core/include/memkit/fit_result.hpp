#pragma once

#include "memkit/params.hpp"

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace memkit {

// Output of any of the fitters. avar is the finite-sample covariance of the
// flattened parameter vector (z-statistics are theta / sqrt(diag(avar))).
struct FitResult {
    std::variant<UniParams, VecParams> params;
    Eigen::VectorXd mu;         // per-series unconditional means
    Eigen::VectorXd tau;        // slow component path (all ones for base models)
    Eigen::MatrixXd xi;         // T x K short-run paths
    Eigen::MatrixXd residuals;  // T x K estimated errors
    Eigen::MatrixXd sigma2;     // 1x1 sigma^2 or K x K Sigma
    Eigen::MatrixXd avar;       // p x p parameter covariance
    Eigen::VectorXd rsq;        // per-series squared correlation
    bool converged = false;
    int iterations = 0;

    int n_obs() const { return static_cast<int>(xi.rows()); }
    int n_series() const { return static_cast<int>(xi.cols()); }
    bool is_multivariate() const { return std::holds_alternative<VecParams>(params); }

    const UniParams& uni() const { return std::get<UniParams>(params); }
    const VecParams& vec() const { return std::get<VecParams>(params); }

    Eigen::VectorXd theta() const;
    std::vector<std::string> theta_names() const;
    Eigen::VectorXd std_errors() const;

    // Per-equation persistence beta1*_ii and its delta-method standard error.
    Eigen::VectorXd beta1_star() const;
    Eigen::VectorXd beta1_star_se() const;

    // Residual correlations rho_ij = Sigma_ij / (sigma_i sigma_j).
    Eigen::MatrixXd residual_correlation() const;
};

}  // namespace memkit
