#pragma once

#include <string>
#include <vector>

#include "spacings/types.hpp"

namespace spacings {

enum class DensityKind { Uniform, Step, TruncatedNormal, Trapezoidal };

enum class ExtremalFamily { Weibull, Gumbel, Frechet, Unclassified };

// Extremal type of the location distribution's upper tail. index is the
// Weibull/Frechet exponent a and is meaningless for the other families.
struct ExtremalType {
  ExtremalFamily family = ExtremalFamily::Unclassified;
  double index = 0.0;
};

// b_n = G(1/n), a_n = G(1/(n e)) - b_n with G the inverse survival function,
// B the right support endpoint.
struct NormingConstants {
  double a_n = 0.0;
  double b_n = 0.0;
  double B = 0.0;
};

// Location density on a bounded interval. Immutable after construction and
// freely shareable across threads. pdf, cdf and quantile are mutually
// consistent (round-trip within 1e-9 on interior points); total mass is
// validated to 1e-10 at construction where it is not structural.
class DensityModel {
 public:
  static DensityModel uniform(double A, double B);
  // edges x_0 < ... < x_m with m heights c_0..c_{m-1}, all positive; mass
  // sum c_i (x_{i+1}-x_i) must equal 1 within 1e-10.
  static DensityModel step(std::vector<double> edges, std::vector<double> heights);
  static DensityModel truncated_normal(double mu, double sigma, double a, double b);
  // Support [0,1]; pdf rises linearly on [0,kappa], is flat on [kappa,1-kappa]
  // and falls linearly on [1-kappa,1]. kappa in [0,1/2]; kappa=0 degenerates
  // to the uniform density and kappa=1/2 to the symmetric triangle.
  static DensityModel trapezoidal(double kappa);

  // Schema: {"kind":"uniform","a":..,"b":..}
  //         {"kind":"step","breakpoints":[..],"heights":[..]}
  //         {"kind":"truncated_normal","mu":..,"sigma":..,"a":..,"b":..}
  //         {"kind":"trapezoidal","kappa":..}
  static DensityModel from_json_text(const std::string& text);
  std::string to_json_text() const;

  DensityKind kind() const { return kind_; }
  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;

  // Monotone quantile transform with a warm start, for mapping an already
  // sorted probability sequence; closed-form kinds ignore the guess.
  double quantile_warm(double p, double guess) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  // Essential infimum of the pdf over the support.
  double p_min() const;
  // Support endpoints plus every interior kink of the pdf.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool symmetric() const;
  ExtremalType classify() const;
  NormingConstants norming(double n) const;

  double trapezoid_kappa() const { return kappa_; }
  const std::vector<double>& step_heights() const { return heights_; }
  const std::vector<double>& step_edges() const { return edges_; }

 private:
  DensityModel() = default;

  DensityKind kind_ = DensityKind::Uniform;
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<double> breakpoints_;

  // step
  std::vector<double> edges_, heights_, cum_;
  // truncated normal
  double mu_ = 0.0, sigma_ = 1.0, z_mass_ = 1.0, cdf_lo_ = 0.0;
  // trapezoidal
  double kappa_ = 0.0;
};

// Masses theta_i = c_i (x_{i+1} - x_i) of a step density plus the occupancy
// counts k_i = floor(n theta_i) used by the mixture formula.
struct StepApproxPartition {
  std::vector<double> thetas;
  std::vector<double> heights;
  std::vector<long> k_i;
};
StepApproxPartition step_partition(const DensityModel& step_model, double n);

// Standard normal helpers shared by the truncated normal code paths.
double normal_pdf(double z);
double normal_cdf(double z);

}  // namespace spacings
