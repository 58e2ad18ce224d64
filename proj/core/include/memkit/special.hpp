#pragma once

namespace memkit {

// Regularized lower incomplete gamma P(a, x) and upper Q(a, x) = 1 - P(a, x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Inverses (for quantiles): solve P(a, x) = p and I_x(a, b) = p.
double inv_reg_lower_gamma(double a, double p);
double inv_reg_inc_beta(double a, double b, double p);

// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

// Chi-square CDF / survival function with integer degrees of freedom.
double chi_square_cdf(double x, int df);
double chi_square_sf(double x, int df);

// Modified Bessel function of the second kind, order 1/4 (used by the
// asymptotic Cramer-von Mises null distribution).
double bessel_k_quarter(double x);

}  // namespace memkit
