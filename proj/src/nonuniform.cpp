#include "spacings/nonuniform.hpp"

#include <algorithm>
#include <cmath>

#include "spacings/gamma_tail.hpp"
#include "spacings/gumbel.hpp"
#include "spacings/simulate.hpp"

namespace spacings {

double cdf_step_mixture(const DensityModel& step_model, double n, int r,
                        double s_scaled) {
  check_arg(step_model.kind() == DensityKind::Step,
            "step mixture: model must be a step density");
  check_arg(n >= 1.0, "step mixture: n must be >= 1");
  check_arg(r >= 1, "step mixture: r must be >= 1");
  if (s_scaled <= 0.0) return 0.0;
  auto part = step_partition(step_model, n);
  double expo = 0.0;
  for (size_t i = 0; i < part.thetas.size(); ++i)
    expo += part.thetas[i] * gamma_tail(r, part.heights[i] * s_scaled);
  return std::exp(-n * expo);
}

bool step_regime_warning(const DensityModel& step_model, double n) {
  auto part = step_partition(step_model, n);
  for (double theta : part.thetas)
    if (n * theta < 10.0) return true;
  return false;
}

double cdf_step_gumbel_limit(const DensityModel& step_model, double n, int r,
                             double s_scaled) {
  check_arg(step_model.kind() == DensityKind::Step,
            "step Gumbel limit: model must be a step density");
  check_arg(r >= 1, "step Gumbel limit: r must be >= 1");
  auto part = step_partition(step_model, n);
  double c_min = *std::min_element(part.heights.begin(), part.heights.end());
  // Pieces at the minimal height dominate the maximum; their total mass
  // enters the limit as a location shift of ln theta*.
  double theta_star = 0.0;
  for (size_t i = 0; i < part.heights.size(); ++i)
    if (part.heights[i] <= c_min * (1.0 + 1e-12)) theta_star += part.thetas[i];
  double t = c_min * s_scaled - gumbel_b(n, r) - std::log(theta_star);
  return std::exp(-std::exp(-t));
}

namespace {

void require_positive_density(const DensityModel& model,
                              const DensityIntegralOptions& opts,
                              const char* what) {
  if (opts.allow_vanishing_density) return;
  if (model.p_min() <= 0.0)
    throw std::domain_error(
        std::string(what) +
        ": density vanishes on its support, the integral law degenerates "
        "there; use the symmetric limit law instead, or set "
        "allow_vanishing_density for a diagnostic run");
}

}  // namespace

double cdf_density_integral(const DensityModel& model, double n, int r,
                            double s_scaled,
                            const DensityIntegralOptions& opts) {
  check_arg(n >= 1.0, "density integral: n must be >= 1");
  check_arg(r >= 1, "density integral: r must be >= 1");
  require_positive_density(model, opts, "density integral");
  if (s_scaled <= 0.0) return 0.0;
  auto integrand = [&](double u) {
    double p = model.pdf(u);
    return p <= 0.0 ? 0.0 : gamma_tail(r, s_scaled * p) * p;
  };
  double I = integrate(integrand, model.support_lo(), model.support_hi(),
                       opts.quad, model.breakpoints());
  return std::exp(-n * I);
}

double cdf_barbe_r1(const DensityModel& model, double n, double s_scaled,
                    const DensityIntegralOptions& opts) {
  check_arg(n >= 1.0, "exponential-kernel law: n must be >= 1");
  require_positive_density(model, opts, "exponential-kernel law");
  if (s_scaled <= 0.0) return 0.0;
  auto integrand = [&](double u) {
    double p = model.pdf(u);
    return p <= 0.0 ? 0.0 : std::exp(-s_scaled * p) * p;
  };
  double I = integrate(integrand, model.support_lo(), model.support_hi(),
                       opts.quad, model.breakpoints());
  return std::exp(-n * I);
}

EmpiricalSpacingTail::EmpiricalSpacingTail(long n, int r, long replicates,
                                           std::uint64_t seed, int threads)
    : n_(static_cast<double>(n)), r_(r) {
  check_arg(replicates >= 100,
            "empirical tail: need at least 100 replicates");
  SimulationSpec spec;
  spec.query = {n, r, 1};
  spec.model = DensityModel::uniform(0.0, 1.0);
  spec.boundary = Boundary::WithEnds;
  spec.replicates = replicates;
  spec.master_seed = seed;
  auto sample = simulate_kth_max_rspacing(spec, threads);
  for (double& v : sample) v *= n_;
  ecdf_ = std::make_shared<const Ecdf>(std::move(sample));
}

double EmpiricalSpacingTail::operator()(double y_scaled) const {
  // Below the sampled range the ECDF is uninformative; the analytic gamma
  // tail continues the estimate and matches -ln(1/R)/n at the handoff.
  if (y_scaled < ecdf_->min()) return gamma_tail(r_, y_scaled);
  double p = (*ecdf_)(y_scaled);
  double floor_p = 1.0 / static_cast<double>(ecdf_->size() + 1);
  return -std::log(std::max(p, floor_p)) / n_;
}

double cdf_density_integral(const DensityModel& model, double n,
                            const EmpiricalSpacingTail& tail, double s_scaled,
                            const DensityIntegralOptions& opts) {
  check_arg(n >= 1.0, "density integral: n must be >= 1");
  require_positive_density(model, opts, "density integral");
  if (s_scaled <= 0.0) return 0.0;
  auto integrand = [&](double u) {
    double p = model.pdf(u);
    return p <= 0.0 ? 0.0 : tail(s_scaled * p) * p;
  };
  double I = integrate(integrand, model.support_lo(), model.support_hi(),
                       opts.quad, model.breakpoints());
  return std::exp(-n * I);
}

double cdf_density_integral(const DensityModel& model, double n,
                            const EmpiricalSpacingTail& tail,
                            double s_scaled) {
  DensityIntegralOptions opts;
  opts.quad.order = 16;
  opts.quad.panels = 256;
  return cdf_density_integral(model, n, tail, s_scaled, opts);
}

}  // namespace spacings
