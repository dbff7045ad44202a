#pragma once

namespace spacings {

// Survival function of the Gamma(r,1) distribution for integer r >= 1:
//   f_r(x) = 1 - G_r(x) = e^{-x} * sum_{i=1}^{r} x^{i-1} / (i-1)!
// Evaluated by the finite sum with a term recurrence and compensated
// summation rather than a library incomplete gamma, so the value is
// bit-stable across platforms. Strictly decreasing in x, f_r(0) = 1.
// Throws std::domain_error for x < 0 or r < 1.
double gamma_tail(int r, double x);

// log f_r(x), usable far into the tail where f_r underflows.
double log_gamma_tail(int r, double x);

}  // namespace spacings
