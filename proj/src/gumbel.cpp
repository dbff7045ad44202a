#include "spacings/gumbel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spacings/exact.hpp"
#include "spacings/gamma_tail.hpp"

namespace spacings {

double gumbel_b(double n, int r) {
  if (!(n >= 3.0)) throw std::domain_error("gumbel_b: n must be >= 3");
  if (r < 1) throw std::domain_error("gumbel_b: r must be >= 1");
  return std::log(n) + (r - 1) * std::log(std::log(n)) -
         std::lgamma(static_cast<double>(r));
}

double cdf_gumbel_classic(double n, int r, double x_scaled) {
  double b = gumbel_b(n, r);
  return std::exp(-std::exp(-(x_scaled - b)));
}

double cdf_gamma_approx(double n, int r, double x_scaled) {
  if (!(n >= 1.0)) throw std::domain_error("cdf_gamma_approx: n must be >= 1");
  return std::exp(-n * gamma_tail(r, x_scaled));
}

namespace {

// Right side of the fixed-point equation; returns NaN when the polynomial
// sum is not positive (can happen for strongly negative b + x).
double shift_map(double n, int r, double x, double b) {
  double u = b + x;
  double term = 1.0;
  double sum = 1.0;
  for (int i = 2; i <= r; ++i) {
    term *= u / static_cast<double>(i - 1);
    sum += term;
  }
  if (!(sum > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(n) + std::log(sum);
}

}  // namespace

double solve_corrected_shift(double n, int r, double x) {
  if (!(n >= 3.0)) throw std::domain_error("solve_corrected_shift: n must be >= 3");
  if (r < 1) throw std::domain_error("solve_corrected_shift: r must be >= 1");
  if (r == 1) return std::log(n);  // the sum reduces to 1

  double b = gumbel_b(n, r);
  double damping = 1.0;
  double prev_delta = 0.0;
  for (int it = 0; it < 200; ++it) {
    double target = shift_map(n, r, x, b);
    if (std::isnan(target)) break;  // leave to the bisection fallback
    double delta = target - b;
    // The map is a contraction near the root for large n; halve the step on
    // oscillation so overshooting cannot cycle.
    if (it > 0 && delta * prev_delta < 0.0 &&
        std::fabs(delta) >= std::fabs(prev_delta))
      damping = 0.5;
    prev_delta = delta;
    b += damping * delta;
    if (std::fabs(delta) < 1e-13 * std::max(1.0, std::fabs(b))) {
      double residual = b - shift_map(n, r, x, b);
      if (std::fabs(residual) < 1e-12) return b;
    }
  }

  // Bisection fallback on g(b) = b - shift_map(b), which is increasing in b
  // wherever the map is defined.
  double lo = std::log(n);  // g(lo) <= 0 whenever a root exists above it
  double hi = std::max(4.0 * gumbel_b(n, r), lo + 64.0);
  auto g = [&](double bb) { return bb - shift_map(n, r, x, bb); };
  double glo = g(lo);
  double ghi = g(hi);
  for (int grow = 0; grow < 60 && !(ghi > 0.0); ++grow) {
    hi *= 2.0;
    ghi = g(hi);
  }
  if (std::isnan(glo) || std::isnan(ghi) || !(glo <= 0.0) || !(ghi > 0.0))
    throw std::domain_error(
        "solve_corrected_shift: failed to bracket the shift equation");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (std::isnan(gm) || gm <= 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * std::max(1.0, std::fabs(hi))) break;
  }
  double b_out = 0.5 * (lo + hi);
  if (std::fabs(g(b_out)) > 1e-12)
    throw std::domain_error("solve_corrected_shift: residual above tolerance");
  return b_out;
}

namespace {

// Support hint from the Gumbel quantile transform q(p) = (b - ln(-ln p))/n,
// widened so eval(lo) <= 0.001 and eval(hi) >= 0.999 comfortably hold.
void gumbel_support(long n, int r, double& lo, double& hi) {
  double b = gumbel_b(static_cast<double>(n), r);
  double nn = static_cast<double>(n);
  lo = std::max(0.0, (b - std::log(-std::log(1e-4))) / nn);
  hi = (b - std::log(-std::log(1.0 - 1e-4))) / nn;
}

}  // namespace

CdfEstimate make_gamma_estimate(long n, int r) {
  CdfEstimate est;
  est.method = CdfMethod::GammaTail;
  double nn = static_cast<double>(n);
  est.eval = [nn, r](double x) { return cdf_gamma_approx(nn, r, nn * x); };
  gumbel_support(n, r, est.support_lo, est.support_hi);
  return est;
}

CdfEstimate make_gumbel_classic_estimate(long n, int r) {
  CdfEstimate est;
  est.method = CdfMethod::GumbelClassic;
  double nn = static_cast<double>(n);
  est.eval = [nn, r](double x) { return cdf_gumbel_classic(nn, r, nn * x); };
  gumbel_support(n, r, est.support_lo, est.support_hi);
  return est;
}

CdfEstimate make_exact_r1_estimate(long n) {
  if (n < 1 || n > kExactR1MaxN)
    throw std::domain_error(
        "make_exact_r1_estimate: n outside the exact evaluator's stable "
        "range");
  CdfEstimate est;
  est.method = CdfMethod::ExactR1;
  // The raw evaluator refuses deep-tail arguments where cancellation drives
  // its error bound past 1e-10; there the true value lies below that floor,
  // and an estimate that quantile inversion can walk through reads it as
  // zero. Arguments outside [0,1] still propagate.
  est.eval = [n](double x) {
    try {
      return exact_max_spacing_cdf_r1(n, x);
    } catch (const std::domain_error&) {
      if (x >= 0.0 && x <= 1.0) return 0.0;
      throw;
    }
  };
  if (n >= 3) {
    gumbel_support(n, 1, est.support_lo, est.support_hi);
    est.support_hi = std::min(est.support_hi, 1.0);
  } else {
    est.support_lo = 1.0 / static_cast<double>(n + 1);
    est.support_hi = 1.0;
  }
  return est;
}

}  // namespace spacings
