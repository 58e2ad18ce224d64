#include "memkit/fit_result.hpp"

#include <cmath>

namespace memkit {

Eigen::VectorXd FitResult::theta() const {
    if (is_multivariate()) return vec().flatten();
    return uni().flatten();
}

std::vector<std::string> FitResult::theta_names() const {
    if (is_multivariate()) return VecParams::param_names(vec().dim());
    return UniParams::param_names();
}

Eigen::VectorXd FitResult::std_errors() const {
    Eigen::VectorXd se(avar.rows());
    for (Eigen::Index i = 0; i < avar.rows(); ++i) se[i] = std::sqrt(std::max(0.0, avar(i, i)));
    return se;
}

Eigen::VectorXd FitResult::beta1_star() const {
    if (!is_multivariate()) {
        Eigen::VectorXd b(1);
        b[0] = uni().beta1_star();
        return b;
    }
    const auto& p = vec();
    Eigen::VectorXd b(p.dim());
    for (int i = 0; i < p.dim(); ++i)
        b[i] = p.beta1_diag[i] + p.alpha1(i, i) + 0.5 * p.gamma1_diag[i];
    return b;
}

Eigen::VectorXd FitResult::beta1_star_se() const {
    // beta1*_ii = beta_ii + alpha_ii + gamma_ii / 2 is linear in theta.
    if (!is_multivariate()) {
        Eigen::Vector3d g(1.0, 1.0, 0.5);
        Eigen::VectorXd se(1);
        se[0] = std::sqrt(std::max(0.0, double(g.transpose() * avar * g)));
        return se;
    }
    const int k = vec().dim();
    const int block = k + 2;
    Eigen::VectorXd se(k);
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(avar.rows());
        g[i * block] = 1.0;            // beta_ii
        g[i * block + 1 + i] = 1.0;    // alpha_ii
        g[i * block + 1 + k] = 0.5;    // gamma_ii
        se[i] = std::sqrt(std::max(0.0, double(g.transpose() * avar * g)));
    }
    return se;
}

Eigen::MatrixXd FitResult::residual_correlation() const {
    const Eigen::Index k = sigma2.rows();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            const double denom = std::sqrt(sigma2(i, i) * sigma2(j, j));
            rho(i, j) = denom > 0.0 ? sigma2(i, j) / denom : (i == j ? 1.0 : 0.0);
        }
    return rho;
}

}  // namespace memkit
