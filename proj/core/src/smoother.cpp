#include "memkit/smoother.hpp"

#include "memkit/errors.hpp"

#include <cmath>
#include <vector>

namespace memkit {

namespace {

double kernel_value(KernelKind kind, double u) {
    switch (kind) {
        case KernelKind::Gaussian:
            return std::exp(-0.5 * u * u);
        case KernelKind::Epanechnikov:
            return std::fabs(u) < 1.0 ? 1.0 - u * u : 0.0;
    }
    throw InvalidArgument("unknown kernel kind");
}

}  // namespace

Eigen::VectorXd nw_smooth(const Eigen::VectorXd& targets, const SmootherConfig& config) {
    const auto t_len = static_cast<int>(targets.size());
    if (config.bandwidth_days < 5) throw InvalidArgument("bandwidth_days must be >= 5");
    if (t_len < 2 * config.bandwidth_days)
        throw InvalidArgument("need T >= 2 * bandwidth_days observations");
    for (int t = 0; t < t_len; ++t)
        if (!std::isfinite(targets[t]) || targets[t] < 0.0)
            throw InvalidArgument("smoothing targets must be finite and non-negative");

    // The kernel argument (z_t - z_s)/h depends only on the lag t - s, so
    // one weight per lag covers the whole double sum.
    const double h = static_cast<double>(config.bandwidth_days) / t_len;
    std::vector<double> w(static_cast<std::size_t>(t_len));
    for (int d = 0; d < t_len; ++d) {
        const double zdiff = static_cast<double>(d) / t_len;
        w[static_cast<std::size_t>(d)] = kernel_value(config.kernel, zdiff / h);
    }

    Eigen::VectorXd smoothed(t_len);
    for (int t = 0; t < t_len; ++t) {
        double num = 0.0, den = 0.0;
        for (int s = 0; s < t_len; ++s) {
            const double weight = w[static_cast<std::size_t>(std::abs(t - s))];
            num += targets[s] * weight;
            den += weight;
        }
        if (!(den > 0.0)) throw DegenerateWeights("all kernel weights vanished at t=" + std::to_string(t));
        smoothed[t] = num / den;
    }

    const double mean = smoothed.mean();
    if (!(mean > 0.0)) throw DegenerateWeights("smoothed path has non-positive mean");
    return smoothed / mean;
}

Eigen::VectorXd precision_weighted_target(const Eigen::MatrixXd& scaled,
                                          const Eigen::VectorXd& sigma2_diag) {
    const auto k = static_cast<int>(scaled.cols());
    if (sigma2_diag.size() != k) throw InvalidArgument("sigma2_diag length must match columns");
    Eigen::VectorXd weights(k);
    for (int j = 0; j < k; ++j) {
        if (!(sigma2_diag[j] > 0.0))
            throw ZeroVariance("sigma_j^2 must be positive (series " + std::to_string(j) + ")");
        weights[j] = 1.0 / sigma2_diag[j];
    }
    weights /= weights.sum();
    return scaled * weights;
}

}  // namespace memkit
