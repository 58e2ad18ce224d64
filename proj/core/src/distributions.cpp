#include "memkit/distributions.hpp"

#include "memkit/errors.hpp"
#include "memkit/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace memkit {

namespace {
constexpr double kShapeLo = 2.0 + 1e-6;
constexpr double kShapeHi = 200.0;
}  // namespace

std::string dist_kind_name(DistKind kind) {
    switch (kind) {
        case DistKind::Gamma: return "gamma";
        case DistKind::LogNormal: return "lognormal";
        case DistKind::BetaPrime: return "betaprime";
        case DistKind::LogLogistic: return "loglogistic";
    }
    throw InvalidArgument("unknown distribution kind");
}

DistKind dist_kind_from_name(const std::string& name) {
    if (name == "gamma") return DistKind::Gamma;
    if (name == "lognormal") return DistKind::LogNormal;
    if (name == "betaprime") return DistKind::BetaPrime;
    if (name == "loglogistic") return DistKind::LogLogistic;
    throw InvalidArgument("unknown distribution name '" + name + "'");
}

double loglogistic_sigma2_from_shape(double beta) {
    const double y = std::numbers::pi / beta;
    return std::tan(y) / y - 1.0;
}

DistSpec calibrate(DistKind kind, double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw InvalidArgument("calibrate: sigma2 must be positive and finite");
    switch (kind) {
        case DistKind::Gamma: {
            const double shape = 1.0 / sigma2;
            return {kind, shape, shape, sigma2};
        }
        case DistKind::LogNormal: {
            const double v = std::log1p(sigma2);
            return {kind, -0.5 * v, v, sigma2};
        }
        case DistKind::BetaPrime: {
            const double beta = 2.0 + 2.0 / sigma2;
            return {kind, beta - 1.0, beta, sigma2};
        }
        case DistKind::LogLogistic: {
            // sigma2(beta) decreases strictly from a huge value near beta=2
            // to ~0 as beta grows; bracketed bisection.
            double lo = kShapeLo, hi = kShapeHi;
            if (sigma2 > loglogistic_sigma2_from_shape(lo) || sigma2 < loglogistic_sigma2_from_shape(hi))
                throw UnattainableVariance("log-logistic cannot attain sigma2 = " + std::to_string(sigma2) +
                                           " with shape in (" + std::to_string(kShapeLo) + ", " +
                                           std::to_string(kShapeHi) + "]");
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (loglogistic_sigma2_from_shape(mid) > sigma2) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-12 * std::max(1.0, lo)) break;
            }
            const double beta = 0.5 * (lo + hi);
            const double y = std::numbers::pi / beta;
            const double alpha = std::sin(y) / y;
            return {kind, alpha, beta, sigma2};
        }
    }
    throw InvalidArgument("unknown distribution kind");
}

double pdf(const DistSpec& spec, double x) {
    if (x < 0.0) return 0.0;
    switch (spec.kind) {
        case DistKind::Gamma: {
            const double shape = spec.a, rate = spec.b;
            if (x == 0.0) {
                if (shape > 1.0) return 0.0;
                if (shape == 1.0) return rate;
                return std::numeric_limits<double>::infinity();
            }
            return std::exp(shape * std::log(rate) - std::lgamma(shape) +
                            (shape - 1.0) * std::log(x) - rate * x);
        }
        case DistKind::LogNormal: {
            if (x == 0.0) return 0.0;
            const double m = spec.a, v = spec.b;
            const double z = std::log(x) - m;
            return std::exp(-0.5 * z * z / v) / (x * std::sqrt(2.0 * std::numbers::pi * v));
        }
        case DistKind::BetaPrime: {
            const double alpha = spec.a, beta = spec.b;
            if (x == 0.0) {
                if (alpha > 1.0) return 0.0;
                if (alpha == 1.0) return alpha + beta - 1.0;
                return std::numeric_limits<double>::infinity();
            }
            return std::exp(std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta) +
                            (alpha - 1.0) * std::log(x) - (alpha + beta) * std::log1p(x));
        }
        case DistKind::LogLogistic: {
            const double alpha = spec.a, beta = spec.b;
            if (x == 0.0) {
                if (beta > 1.0) return 0.0;
                if (beta == 1.0) return 1.0 / alpha;
                return std::numeric_limits<double>::infinity();
            }
            const double r = std::pow(x / alpha, beta);
            const double onep = 1.0 + r;
            return (beta / alpha) * std::pow(x / alpha, beta - 1.0) / (onep * onep);
        }
    }
    throw InvalidArgument("unknown distribution kind");
}

double cdf(const DistSpec& spec, double x) {
    if (x <= 0.0) return 0.0;
    switch (spec.kind) {
        case DistKind::Gamma:
            return reg_lower_gamma(spec.a, spec.b * x);
        case DistKind::LogNormal:
            return normal_cdf((std::log(x) - spec.a) / std::sqrt(spec.b));
        case DistKind::BetaPrime:
            return reg_inc_beta(spec.a, spec.b, x / (1.0 + x));
        case DistKind::LogLogistic: {
            const double r = std::pow(x / spec.a, spec.b);
            return r / (1.0 + r);
        }
    }
    throw InvalidArgument("unknown distribution kind");
}

double quantile(const DistSpec& spec, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile: u must lie in [0,1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return std::numeric_limits<double>::infinity();
    switch (spec.kind) {
        case DistKind::Gamma:
            return inv_reg_lower_gamma(spec.a, u) / spec.b;
        case DistKind::LogNormal:
            return std::exp(spec.a + std::sqrt(spec.b) * normal_quantile(u));
        case DistKind::BetaPrime: {
            const double y = inv_reg_inc_beta(spec.a, spec.b, u);
            return y / (1.0 - y);
        }
        case DistKind::LogLogistic:
            return spec.a * std::pow(u / (1.0 - u), 1.0 / spec.b);
    }
    throw InvalidArgument("unknown distribution kind");
}

double sample(const DistSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case DistKind::Gamma:
            return rng.gamma(spec.a) / spec.b;
        case DistKind::LogNormal:
            return std::exp(spec.a + std::sqrt(spec.b) * rng.normal());
        case DistKind::BetaPrime:
        case DistKind::LogLogistic:
            // Inverse-CDF sampling reuses the quantile code path.
            return quantile(spec, rng.uniform01());
    }
    throw InvalidArgument("unknown distribution kind");
}

}  // namespace memkit
