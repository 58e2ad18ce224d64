#pragma once

#include "memkit/fit_result.hpp"
#include "memkit/params.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace memkit {

// Vector filter state: T x K xi paths and the innovation matrices
// V = X - Xi and V- = X .* D- - Xi/2 of the equivalent representation.
struct VXiState {
    Eigen::MatrixXd xi;
    Eigen::MatrixXd v;
    Eigen::MatrixXd v_minus;
};

struct WaldResult {
    double statistic;
    int df;
    double pvalue;
};

// K-variate recursion with diagonal beta1/gamma1 and full alpha1; one
// shared return-sign indicator across series. xi_1 = ones.
VXiState vxi_filter(const VecParams& params, const Eigen::MatrixXd& x_xi,
                    const Eigen::VectorXd& neg_indicator);

// Per-parameter path derivatives. Because beta1 is diagonal, d xi_t / d
// theta_j is nonzero only in the equation that owns theta_j; entry (t, j)
// holds that scalar. equation_of maps flat parameter index -> equation.
Eigen::MatrixXd vxi_gradient(const VecParams& params, const Eigen::MatrixXd& x_xi,
                             const Eigen::VectorXd& neg_indicator);
std::vector<int> equation_of(int k);

// Stacked moment vector sum_t A_t (eps_t - 1) with
// A_t = d xi_t'/d theta diag(xi_t)^{-1} Sigma^{-1}.
Eigen::VectorXd vgmm_criterion(const VecParams& params, const Eigen::MatrixXd& x_xi,
                               const Eigen::VectorXd& neg_indicator, const Eigen::MatrixXd& sigma);

struct VmemFitOptions {
    std::optional<VecParams> start;
    Eigen::MatrixXd initial_sigma;  // empty => identity (consistent first step)
    int max_iter = 300;             // scoring iterations across all stages
    int max_sigma_updates = 50;
    double crit_tol = 1e-7;
    double param_tol = 1e-7;
    bool diagonal_alpha = false;  // pin alpha1 off-diagonals at zero
    bool diagonal_sigma = false;  // keep the weight/MoM Sigma diagonal
};

// Iterated two-step GMM: solve the criterion under the current Sigma by
// Gauss-Newton on the stacked weighted moments, refresh Sigma with its MoM
// estimator, and repeat until the parameter change drops below param_tol.
// avar is (sum_t A_t Sigma A_t')^{-1} at the final estimates.
FitResult vgmm_fit(const Eigen::MatrixXd& x_xi, const Eigen::VectorXd& neg_indicator,
                   const VmemFitOptions& options = {});

// Wald test of theta_R = 0 for the flat-index subset; df is caller-supplied.
WaldResult wald_test(const FitResult& fit, const std::vector<int>& restricted_indices, int df);

// h-step vector forecast: observed regressors at h = 1, homogeneous
// beta1* recursion beyond.
Eigen::VectorXd vforecast(const VecParams& params, const Eigen::VectorXd& xi_t,
                          const Eigen::VectorXd& x_xi_t, double neg_t, int h);

}  // namespace memkit
