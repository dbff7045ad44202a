#pragma once

#include <cstdint>
#include <memory>

#include "spacings/density.hpp"
#include "spacings/ecdf.hpp"
#include "spacings/quadrature.hpp"
#include "spacings/types.hpp"

namespace spacings {

struct DensityIntegralOptions {
  QuadratureSpec quad;
  // The integral approximation is only valid when the density is bounded
  // away from zero on its support. Setting this flag bypasses the refusal
  // for diagnostic runs against densities with vanishing endpoints.
  bool allow_vanishing_density = false;
};

// Step-density mixture law for the scaled maximal r-spacing:
//   P(n M <= s) ~ exp(-n sum_i theta_i f_r(c_i s)),
// theta_i the mass and c_i the height of piece i.
double cdf_step_mixture(const DensityModel& step_model, double n, int r,
                        double s_scaled);

// True when some piece holds fewer than 10 expected points (n theta_i < 10),
// where the mixture law loses accuracy.
bool step_regime_warning(const DensityModel& step_model, double n);

// Gumbel limit of the step mixture: only the minimal-height pieces matter,
//   P(n M <= s) ~ exp(-exp(-(n c_min s - b_n^(r) - ln theta*))),
// theta* the total mass at the minimal height.
double cdf_step_gumbel_limit(const DensityModel& step_model, double n, int r,
                             double s_scaled);

// General-density integral law
//   P(n M <= s) ~ exp(-n int f_r(s p(u)) p(u) du).
// Requires inf p > 0 (see DensityIntegralOptions::allow_vanishing_density).
double cdf_density_integral(const DensityModel& model, double n, int r,
                            double s_scaled,
                            const DensityIntegralOptions& opts = {});

// r = 1 exponential-kernel form exp(-n int e^{-s p(u)} p(u) du); agrees with
// cdf_density_integral at r = 1 up to quadrature error.
double cdf_barbe_r1(const DensityModel& model, double n, double s_scaled,
                    const DensityIntegralOptions& opts = {});

// Tail of the scaled uniform spacing law estimated from simulation:
//   f_hat(y) = -ln ECDF(y) / n over R replicates of n M at the same n.
// Below the sample minimum the ECDF is zero and carries no information, so
// the analytic gamma tail f_r(y) continues the estimate there; the two sides
// agree at the handoff up to Monte Carlo resolution, since the sample
// minimum sits where n f_r(y) is near ln R. Plugs into the integral law in
// place of the analytic tail.
class EmpiricalSpacingTail {
 public:
  EmpiricalSpacingTail(long n, int r, long replicates, std::uint64_t seed,
                       int threads = 0);

  double operator()(double y_scaled) const;
  long replicates() const { return ecdf_->size(); }

 private:
  std::shared_ptr<const Ecdf> ecdf_;
  double n_;
  int r_;
};

// Integral law with the simulated tail in place of f_r. The default
// quadrature is coarser (order 16, 256 panels) because the integrand is a
// step function in y.
double cdf_density_integral(const DensityModel& model, double n,
                            const EmpiricalSpacingTail& tail, double s_scaled,
                            const DensityIntegralOptions& opts);
double cdf_density_integral(const DensityModel& model, double n,
                            const EmpiricalSpacingTail& tail, double s_scaled);

}  // namespace spacings
