#pragma once

#include "spacings/types.hpp"

namespace spacings {

// Centering constant b_n^(r) = ln n + (r-1) ln ln n - ln Gamma(r).
// Natural logarithms throughout. n may be non-integral; requires n >= 3 so
// that ln ln n is safely positive.
double gumbel_b(double n, int r);

// Limiting Gumbel law for the scaled maximal r-spacing:
//   P(n M <= x_scaled) ~ exp(-exp(-(x_scaled - b_n^(r)))).
double cdf_gumbel_classic(double n, int r, double x_scaled);

// Gamma-tail approximation P(n M <= x_scaled) ~ exp(-n f_r(x_scaled)).
// Coincides with cdf_gumbel_classic when r = 1.
double cdf_gamma_approx(double n, int r, double x_scaled);

// Solves the corrected-shift equation
//   b = ln n + ln( sum_{i=1}^r (b+x)^{i-1} / (i-1)! )
// by damped fixed-point iteration started at gumbel_b(n, r), falling back to
// bracketed bisection; the residual of the returned b is below 1e-12.
// (b + x)/n is then the quantile of the gamma approximation at the Gumbel
// level p = exp(-exp(-x)); the two parameterizations solve the same
// equation, which the tests assert to 1e-9 relative.
double solve_corrected_shift(double n, int r, double x);

// CdfEstimate wrappers with support hints sized from the Gumbel quantiles.
CdfEstimate make_gamma_estimate(long n, int r);
CdfEstimate make_gumbel_classic_estimate(long n, int r);
CdfEstimate make_exact_r1_estimate(long n);

}  // namespace spacings
