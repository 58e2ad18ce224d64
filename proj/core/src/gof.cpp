#include "memkit/gof.hpp"

#include "memkit/errors.hpp"
#include "memkit/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace memkit {

namespace {

constexpr int kMinObservations = 20;

// Sorted CDF-transformed residuals with zeros dropped.
std::vector<double> transformed(const Eigen::VectorXd& residuals, const DistSpec& spec, int& n_used) {
    std::vector<double> u;
    u.reserve(static_cast<std::size_t>(residuals.size()));
    for (Eigen::Index t = 0; t < residuals.size(); ++t) {
        const double r = residuals[t];
        if (!std::isfinite(r) || r < 0.0)
            throw InvalidArgument("residuals must be finite and non-negative");
        if (r == 0.0) continue;
        u.push_back(cdf(spec, r));
    }
    n_used = static_cast<int>(u.size());
    if (n_used < kMinObservations)
        throw TooFewObservations("need at least 20 positive residuals, have " + std::to_string(n_used));
    std::sort(u.begin(), u.end());
    return u;
}

}  // namespace

// Marsaglia & Marsaglia's approximation to the asymptotic A^2 CDF
// (absolute error below 2e-6 on either branch).
double ad_asymptotic_cdf(double a2) {
    if (a2 <= 0.0) return 0.0;
    double p;
    if (a2 < 2.0) {
        p = std::exp(-1.2337141 / a2) / std::sqrt(a2) *
            (2.00012 +
             (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * a2) * a2) * a2) * a2) * a2);
    } else {
        p = std::exp(
            -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * a2) * a2) * a2) * a2) * a2));
    }
    return std::clamp(p, 0.0, 1.0);
}

// Smirnov's series for the asymptotic W^2 CDF in terms of K_{1/4}.
double cvm_asymptotic_cdf(double w2) {
    if (w2 <= 0.0) return 0.0;
    if (w2 > 15.0) return 1.0;
    double sum = 0.0;
    for (int k = 0; k < 40; ++k) {
        const double y = 4.0 * k + 1.0;
        const double q = y * y / (16.0 * w2);
        if (q > 300.0) break;
        const double coeff = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) /
                             (std::pow(std::numbers::pi, 1.5) * std::sqrt(w2));
        const double term = coeff * std::sqrt(y) * std::exp(-q) * bessel_k_quarter(q);
        sum += term;
        if (term < 1e-16 * std::max(sum, 1e-300) && k > 0) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

GofResult ad_test(const Eigen::VectorXd& residuals, const DistSpec& spec) {
    int n_used = 0;
    const std::vector<double> u = transformed(residuals, spec, n_used);
    const double n = n_used;
    double sum = 0.0;
    for (int i = 0; i < n_used; ++i) {
        const double weight = 2.0 * (i + 1) - 1.0;
        sum += weight * (std::log(u[static_cast<std::size_t>(i)]) +
                         std::log1p(-u[static_cast<std::size_t>(n_used - 1 - i)]));
    }
    const double a2 = -n - sum / n;
    return GofResult{a2, 1.0 - ad_asymptotic_cdf(a2), spec, n_used};
}

GofResult cvm_test(const Eigen::VectorXd& residuals, const DistSpec& spec) {
    int n_used = 0;
    const std::vector<double> u = transformed(residuals, spec, n_used);
    const double n = n_used;
    double w2 = 1.0 / (12.0 * n);
    for (int i = 0; i < n_used; ++i) {
        const double target = (2.0 * (i + 1) - 1.0) / (2.0 * n);
        const double diff = u[static_cast<std::size_t>(i)] - target;
        w2 += diff * diff;
    }
    return GofResult{w2, 1.0 - cvm_asymptotic_cdf(w2), spec, n_used};
}

}  // namespace memkit
