#pragma once

#include "memkit/fit_result.hpp"
#include "memkit/params.hpp"

#include <Eigen/Dense>

#include <optional>

namespace memkit {

// Short-run filter state: the xi path and the zero-mean innovations of the
// equivalent one-lag representation, v_t = x_t - xi_t and
// v-_t = x_t D-_t - xi_t / 2.
struct XiState {
    Eigen::VectorXd xi;
    Eigen::VectorXd v;
    Eigen::VectorXd v_minus;
};

// Runs the recursion
//   xi_t = [1 - (b1 + a1 + g1/2)] + b1 xi_{t-1} + a1 x_{t-1} + g1 x_{t-1} D-_{t-1}
// from xi_1 = 1 (the unconditional mean; the start decays geometrically).
// Inputs are the tau/mu-scaled observations. Throws NonPositiveXi when the
// path leaves the positive orthant (inadmissible parameter point).
XiState xi_filter(const UniParams& params, const Eigen::VectorXd& x_xi,
                  const Eigen::VectorXd& neg_indicator);

// d xi_t / d(beta1, alpha1, gamma1), propagated through the recursion with a
// zero derivative at t = 1. Row t is the gradient of xi_t.
Eigen::MatrixXd xi_gradient(const UniParams& params, const Eigen::VectorXd& x_xi,
                            const Eigen::VectorXd& neg_indicator);

// Moment sum sum_t (eps_t - 1) a_t with eps_t = x_t / xi_t and
// a_t = grad(xi_t) / xi_t; identical to the Gamma quasi-likelihood score.
Eigen::Vector3d gmm_criterion(const UniParams& params, const Eigen::VectorXd& x_xi,
                              const Eigen::VectorXd& neg_indicator);

struct MemFitOptions {
    std::optional<UniParams> start;
    int max_iter = 500;
    double grad_tol = 1e-7;
};

// Efficient GMM / Gamma-QML fit: Fisher-scoring ascent on the
// quasi-log-likelihood with the analytic score, step-halving at
// inadmissible points (beta1* >= 1 - 1e-6 or a non-positive xi path).
// On success the FitResult carries xi, residuals, sigma2 (MoM), the
// finite-sample parameter covariance sigma2 * (sum a a')^{-1} and the
// squared correlation between x and the fitted path.
FitResult fit_mem(const Eigen::VectorXd& x_xi, const Eigen::VectorXd& neg_indicator,
                  const MemFitOptions& options = {});

// h-step-ahead short-run forecast from time t: the observed-regressor
// recursion at h = 1, then xi_{t+h|t} - 1 = beta1*^{h-1} (xi_{t+1|t} - 1).
double forecast_xi(const UniParams& params, double xi_t, double x_xi_t, double neg_t, int h);

}  // namespace memkit
