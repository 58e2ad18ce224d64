#include "memkit/params.hpp"

#include "memkit/errors.hpp"

#include <cmath>

namespace memkit {

UniParams::UniParams(double beta1, double alpha1, double gamma1)
    : beta1(beta1), alpha1(alpha1), gamma1(gamma1) {
    const double star = beta1_star();
    if (!(star >= 0.0 && star < 1.0) || !std::isfinite(star))
        throw StationarityError("beta1* = " + std::to_string(star) + " outside [0, 1)");
}

UniParams UniParams::from_flat(const Eigen::Vector3d& theta) {
    return UniParams(theta[0], theta[1], theta[2]);
}

bool UniParams::is_admissible(const Eigen::Vector3d& theta, double margin) {
    const double star = theta[0] + theta[1] + 0.5 * theta[2];
    return std::isfinite(star) && star >= 0.0 && star < 1.0 - margin;
}

std::vector<std::string> UniParams::param_names() {
    return {"beta1", "alpha1", "gamma1"};
}

VecParams::VecParams(Eigen::VectorXd beta1_diag_, Eigen::MatrixXd alpha1_, Eigen::VectorXd gamma1_diag_)
    : beta1_diag(std::move(beta1_diag_)), alpha1(std::move(alpha1_)), gamma1_diag(std::move(gamma1_diag_)) {
    const int k = dim();
    if (k < 1 || alpha1.rows() != k || alpha1.cols() != k || gamma1_diag.size() != k)
        throw InvalidArgument("VecParams: inconsistent dimensions");
    const double rho = spectral_radius();
    if (!(rho < 1.0) || !std::isfinite(rho))
        throw StationarityError("spectral radius of beta1* = " + std::to_string(rho) + " not below 1");
}

Eigen::MatrixXd VecParams::beta1_star() const {
    Eigen::MatrixXd star = alpha1;
    star.diagonal() += beta1_diag + 0.5 * gamma1_diag;
    return star;
}

Eigen::VectorXd VecParams::flatten() const {
    const int k = dim();
    Eigen::VectorXd theta(n_params(k));
    int pos = 0;
    for (int i = 0; i < k; ++i) {
        theta[pos++] = beta1_diag[i];
        for (int j = 0; j < k; ++j) theta[pos++] = alpha1(i, j);
        theta[pos++] = gamma1_diag[i];
    }
    return theta;
}

VecParams VecParams::from_flat(const Eigen::VectorXd& theta, int k) {
    if (theta.size() != n_params(k)) throw InvalidArgument("VecParams::from_flat: wrong length");
    Eigen::VectorXd beta(k), gamma(k);
    Eigen::MatrixXd alpha(k, k);
    int pos = 0;
    for (int i = 0; i < k; ++i) {
        beta[i] = theta[pos++];
        for (int j = 0; j < k; ++j) alpha(i, j) = theta[pos++];
        gamma[i] = theta[pos++];
    }
    return VecParams(std::move(beta), std::move(alpha), std::move(gamma));
}

bool VecParams::is_admissible(const Eigen::VectorXd& theta, int k, double margin) {
    if (theta.size() != n_params(k) || !theta.allFinite()) return false;
    Eigen::MatrixXd star(k, k);
    int pos = 0;
    for (int i = 0; i < k; ++i) {
        const double beta = theta[pos++];
        for (int j = 0; j < k; ++j) star(i, j) = theta[pos++];
        const double gamma = theta[pos++];
        star(i, i) += beta + 0.5 * gamma;
    }
    return spectral_radius_of(star) < 1.0 - margin;
}

std::vector<std::string> VecParams::param_names(int k) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n_params(k)));
    for (int i = 1; i <= k; ++i) {
        names.push_back("beta1_" + std::to_string(i) + "," + std::to_string(i));
        for (int j = 1; j <= k; ++j)
            names.push_back("alpha1_" + std::to_string(i) + "," + std::to_string(j));
        names.push_back("gamma1_" + std::to_string(i) + "," + std::to_string(i));
    }
    return names;
}

double VecParams::spectral_radius_of(const Eigen::MatrixXd& m) {
    const int k = static_cast<int>(m.rows());
    if (k == 1) return std::fabs(m(0, 0));
    // Power iteration on a deterministic non-degenerate start; the growth
    // factor is averaged over the tail to stay stable under complex
    // dominant pairs.
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(k, 1.0, 2.0).normalized();
    double log_growth = 0.0;
    int counted = 0;
    const int iters = 80;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        if (it >= iters - 20) {
            log_growth += std::log(norm);
            ++counted;
        }
        v = w / norm;
    }
    return std::exp(log_growth / counted);
}

}  // namespace memkit
