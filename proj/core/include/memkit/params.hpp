#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace memkit {

// Short-run recursion coefficients for the univariate model. The persistence
// beta1* = beta1 + alpha1 + gamma1/2 must satisfy 0 <= beta1* < 1; the
// constructor throws StationarityError otherwise (no silent clamping).
struct UniParams {
    UniParams() : UniParams(0.0, 0.0, 0.0) {}
    UniParams(double beta1, double alpha1, double gamma1);

    double beta1;
    double alpha1;
    double gamma1;

    double beta1_star() const { return beta1 + alpha1 + 0.5 * gamma1; }

    // (beta1, alpha1, gamma1) ordering used for gradients and covariances.
    Eigen::Vector3d flatten() const { return {beta1, alpha1, gamma1}; }
    static UniParams from_flat(const Eigen::Vector3d& theta);
    static bool is_admissible(const Eigen::Vector3d& theta, double margin = 0.0);
    static std::vector<std::string> param_names();
};

// K-variate coefficients: beta1 and gamma1 diagonal, alpha1 full. The
// spectral radius of beta1* = diag(beta1) + alpha1 + diag(gamma1)/2 must be
// below one.
struct VecParams {
    VecParams(Eigen::VectorXd beta1_diag, Eigen::MatrixXd alpha1, Eigen::VectorXd gamma1_diag);

    Eigen::VectorXd beta1_diag;
    Eigen::MatrixXd alpha1;
    Eigen::VectorXd gamma1_diag;

    int dim() const { return static_cast<int>(beta1_diag.size()); }
    Eigen::MatrixXd beta1_star() const;
    double spectral_radius() const { return spectral_radius_of(beta1_star()); }

    // Flat parameter vector, one block of (beta_ii, alpha_i1..alpha_iK,
    // gamma_ii) per equation i; this ordering defines restriction indices.
    Eigen::VectorXd flatten() const;
    static VecParams from_flat(const Eigen::VectorXd& theta, int k);
    static bool is_admissible(const Eigen::VectorXd& theta, int k, double margin = 0.0);
    static std::vector<std::string> param_names(int k);
    static int n_params(int k) { return k * (k + 2); }

    // Dominant |eigenvalue| estimate by normalized power iteration.
    static double spectral_radius_of(const Eigen::MatrixXd& m);
};

}  // namespace memkit
