#include "spacings/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spacings {

namespace {

double log_choose(long n, long j) {
  return std::lgamma(static_cast<double>(n + 1)) -
         std::lgamma(static_cast<double>(j + 1)) -
         std::lgamma(static_cast<double>(n - j + 1));
}

}  // namespace

double exact_max_spacing_cdf_r1(long n, double a) {
  if (n < 1) throw std::domain_error("exact_max_spacing_cdf_r1: n must be >= 1");
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("exact_max_spacing_cdf_r1: a must lie in [0,1]");
  if (n > kExactR1MaxN)
    throw std::domain_error(
        "exact_max_spacing_cdf_r1: n exceeds the stability threshold; the "
        "alternating binomial sum suffers catastrophic cancellation, use the "
        "gamma or Gumbel approximation instead");
  if (a >= 1.0) return 1.0;
  if (a * static_cast<double>(n + 1) <= 1.0) return 0.0;

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double sum = 0.0;
  double comp = 0.0;
  double err_bound = 0.0;
  double sign = 1.0;
  for (long j = 1; j <= n + 1; ++j, sign = -sign) {
    double ja = static_cast<double>(j) * a;
    if (ja >= 1.0) break;
    double lc = log_choose(n + 1, j);
    double lp = static_cast<double>(n) * std::log1p(-ja);
    double term = std::exp(lc + lp);
    // Relative error of the term is driven by the absolute error of its log.
    err_bound += term * ((std::fabs(lc) + std::fabs(lp)) * kEps * 4.0 + kEps);

    double y = sign * term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (err_bound > 1e-10)
    throw std::domain_error(
        "exact_max_spacing_cdf_r1: catastrophic cancellation at this (n, a); "
        "the alternating terms exceed the result by more than double "
        "precision can absorb, use the gamma approximation instead");
  double p = 1.0 - sum;
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

}  // namespace spacings
