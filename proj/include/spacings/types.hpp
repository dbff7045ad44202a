#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace spacings {

// Which gaps of a sorted sample count as r-spacings.
// WithEnds includes the two boundary gaps X_(r)-A and B-X_(n-r+1) and yields
// n-r+2 values; Interior uses only X_(i+r)-X_(i), i=1..n-r.
enum class Boundary { WithEnds, Interior };

struct SpacingQuery {
  long n = 0;  // sample size
  int r = 1;   // spacing order
  int k = 1;   // rank of the maximum, 1 = largest
  // Requires 1 <= r <= n and 1 <= k <= n - r + 2.
  void validate() const;
};

enum class CdfMethod {
  ExactR1,
  GammaTail,
  GumbelClassic,
  GumbelCorrected,
  StepMixture,
  DensityIntegral,
  LimitProcess,
  MonteCarlo,
};

const char* cdf_method_name(CdfMethod m);

// A distribution function together with the method that produced it.
// eval must be nondecreasing with values in [0,1]; [support_lo, support_hi]
// brackets the bulk of the mass (eval(lo) <= 0.001, eval(hi) >= 0.999).
// mc_stderr is empty for deterministic methods.
struct CdfEstimate {
  CdfMethod method = CdfMethod::GammaTail;
  std::function<double(double)> eval;
  double support_lo = 0.0;
  double support_hi = 1.0;
  std::function<double(double)> mc_stderr;
};

// Inverts a monotone CdfEstimate by bracketed bisection. The bracket starts
// at the support hint and grows geometrically if needed. Stops when
// |eval(q) - p| < 1e-10 or the bracket collapses to machine width (step
// functions cannot meet the probability tolerance); returns the midpoint.
double quantile(const CdfEstimate& est, double p);

// Argument validation helper: throws std::invalid_argument when cond fails.
inline void check_arg(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace spacings
