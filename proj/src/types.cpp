#include "spacings/types.hpp"

#include <cmath>
#include <stdexcept>

namespace spacings {

void SpacingQuery::validate() const {
  check_arg(n >= 1, "SpacingQuery: n must be positive");
  check_arg(r >= 1 && r <= n, "SpacingQuery: need 1 <= r <= n");
  check_arg(k >= 1 && k <= n - r + 2, "SpacingQuery: need 1 <= k <= n - r + 2");
}

const char* cdf_method_name(CdfMethod m) {
  switch (m) {
    case CdfMethod::ExactR1: return "exact";
    case CdfMethod::GammaTail: return "gamma";
    case CdfMethod::GumbelClassic: return "gumbel";
    case CdfMethod::GumbelCorrected: return "corrected";
    case CdfMethod::StepMixture: return "step-mixture";
    case CdfMethod::DensityIntegral: return "density-integral";
    case CdfMethod::LimitProcess: return "limit-process";
    case CdfMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

double quantile(const CdfEstimate& est, double p) {
  check_arg(p > 0.0 && p < 1.0, "quantile: p must lie in (0,1)");
  check_arg(static_cast<bool>(est.eval), "quantile: estimate has no eval");

  double lo = est.support_lo;
  double hi = est.support_hi;
  if (!(hi > lo)) hi = lo + 1.0;

  // Grow the bracket geometrically until it straddles p. The lower edge
  // walks toward zero and then below it, so estimates supported on the whole
  // line still bracket.
  double width = hi - lo;
  for (int it = 0; it < 200 && est.eval(lo) > p; ++it) {
    lo -= width;
    if (lo < 0.0 && est.eval(0.0) <= p) { lo = 0.0; break; }
    width *= 2.0;
  }
  width = hi - lo;
  for (int it = 0; it < 200 && est.eval(hi) < p; ++it) {
    hi += width;
    width *= 2.0;
  }
  if (est.eval(lo) > p || est.eval(hi) < p)
    throw std::domain_error("quantile: failed to bracket the target level");

  // Bisect until the bracket collapses to 1e-12 relative width. No early
  // exit on the probability residual: flat stretches of the CDF would stop
  // the argument far from the true quantile.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = est.eval(mid);
    if (f < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(std::fabs(lo), std::fabs(hi)) ||
        hi - lo <= 1e-300)
      break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace spacings
