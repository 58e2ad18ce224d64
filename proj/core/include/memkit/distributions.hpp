#pragma once

#include "memkit/rng.hpp"

#include <string>

namespace memkit {

enum class DistKind { Gamma, LogNormal, BetaPrime, LogLogistic };

std::string dist_kind_name(DistKind kind);
DistKind dist_kind_from_name(const std::string& name);

// A unit-mean error distribution calibrated from sigma^2.
//
//   Gamma        a = shape alpha,  b = rate beta   (alpha = beta = 1/s2)
//   LogNormal    a = m,            b = V           (V = ln(s2+1), m = -V/2)
//   BetaPrime    a = alpha,        b = beta        (beta = 2 + 2/s2, alpha = beta - 1)
//   LogLogistic  a = scale alpha,  b = shape beta  (beta solves the variance map)
struct DistSpec {
    DistKind kind;
    double a;
    double b;
    double sigma2;  // variance implied at calibration
};

// Calibrates so the implied mean is one and the implied variance sigma2.
// For the log-logistic the shape solves var(beta) = tan(pi/beta)/(pi/beta) - 1
// by bisection on (2, 200]; variances outside the attainable range raise
// UnattainableVariance.
DistSpec calibrate(DistKind kind, double sigma2);

double pdf(const DistSpec& spec, double x);
double cdf(const DistSpec& spec, double x);
double quantile(const DistSpec& spec, double u);
double sample(const DistSpec& spec, Rng& rng);

// The unit-mean log-logistic variance as a function of the shape beta > 2.
double loglogistic_sigma2_from_shape(double beta);

}  // namespace memkit
