#include "spacings/gamma_tail.hpp"

#include <cmath>
#include <stdexcept>

namespace spacings {

namespace {

// Accumulates S = sum_{i=1}^{r} x^{i-1}/(i-1)! with Kahan compensation.
// When the running sum threatens to overflow it is rescaled by 2^-512 and
// the exponent is carried separately, so any (r, x) pair is safe.
struct TailSum {
  double sum = 0.0;
  double log_scale = 0.0;
};

TailSum poly_sum(int r, double x) {
  constexpr double kRescaleAt = 0x1.0p+960;   // well below overflow
  constexpr double kRescale = 0x1.0p-512;
  constexpr double kLogRescale = 512.0 * 0.69314718055994530942;

  TailSum out;
  double sum = 1.0;  // i = 1 term
  double comp = 0.0;
  double term = 1.0;
  for (int i = 2; i <= r; ++i) {
    term *= x / static_cast<double>(i - 1);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (sum > kRescaleAt) {
      sum *= kRescale;
      comp *= kRescale;
      term *= kRescale;
      out.log_scale += kLogRescale;
    }
  }
  out.sum = sum;
  return out;
}

}  // namespace

double gamma_tail(int r, double x) {
  if (r < 1) throw std::domain_error("gamma_tail: r must be >= 1");
  if (!(x >= 0.0)) throw std::domain_error("gamma_tail: x must be >= 0");
  if (x == 0.0) return 1.0;

  TailSum s = poly_sum(r, x);
  if (s.log_scale == 0.0 && x < 700.0) {
    // Common branch: both factors representable at full precision.
    double v = std::exp(-x) * s.sum;
    return v > 1.0 ? 1.0 : v;
  }
  double lv = s.log_scale + std::log(s.sum) - x;
  if (lv >= 0.0) return 1.0;
  return std::exp(lv);
}

double log_gamma_tail(int r, double x) {
  if (r < 1) throw std::domain_error("log_gamma_tail: r must be >= 1");
  if (!(x >= 0.0)) throw std::domain_error("log_gamma_tail: x must be >= 0");
  if (x == 0.0) return 0.0;
  TailSum s = poly_sum(r, x);
  double lv = s.log_scale + std::log(s.sum) - x;
  return lv > 0.0 ? 0.0 : lv;
}

}  // namespace spacings
