#pragma once

#include <cstdint>
#include <string>

#include "spacings/density.hpp"
#include "spacings/quadrature.hpp"
#include "spacings/types.hpp"

namespace spacings {

// Sequencing geometry: a genome of N base pairs, reads that must overlap by
// at least I base pairs to assemble, and a read length that is either fixed
// or Normal(mean, sd) truncated to (I, N). An n-read experiment achieves
// r-fold coverage exactly when the largest r-spacing of the n start
// positions (mapped to [0,1]) stays below (L - I)/N.
struct ReadModel {
  double genome_length = 0.0;  // N
  double overlap = 0.0;        // I
  double length_mean = 0.0;    // fixed length, or Normal mean
  double length_sd = 0.0;      // 0 means fixed length

  bool random() const { return length_sd > 0.0; }
  // Fixed: the length itself. Random: mean of the truncated distribution.
  double expected_length() const;
  // Quantile of the effective segment fraction Y = (L - I)/N at level p.
  double segment_fraction_quantile(double p) const;
  void validate() const;
};

enum class PlanMethod {
  Auto,
  ExactR1,
  Gamma,
  Integral,
  SymmetricLimit,
  Simulation,
};

const char* plan_method_name(PlanMethod m);
PlanMethod plan_method_from_name(const std::string& name);

struct CoveragePlan {
  ReadModel read;
  int r = 1;
  double target_prob = 0.95;
  DensityModel location = DensityModel::uniform(0.0, 1.0);
  PlanMethod method = PlanMethod::Auto;

  void validate() const;
  // {"genome_length":..,"overlap":..,"read":{"fixed":..}|{"normal":{"mean":..,"sd":..}},
  //  "r":..,"target_prob":..,"location_density":{..},"method":"auto"}
  // location_density and method are optional (uniform / auto).
  static CoveragePlan from_json_text(const std::string& text);
};

struct PlanOptions {
  std::uint64_t seed = 0;
  long replicates = 100000;
  int threads = 0;
  QuadratureSpec quad;
};

// Concrete method used for a plan: resolves Auto from the location model
// (uniform: gamma approximation; step and truncated normal: density
// integral; trapezoidal: symmetric limit law) and rejects mismatches such
// as the integral method on a density vanishing at its endpoints, or a
// k = 1 method when k > 1 is requested.
PlanMethod resolve_method(const CoveragePlan& plan, int k = 1);

// P(r-fold coverage with n reads). Fixed lengths evaluate the selected CDF
// at l = (L-I)/N; random lengths integrate it against the length law with
// 128-node Gauss-Legendre in the probability domain.
double coverage_probability(const CoveragePlan& plan, long long n,
                            const PlanOptions& opts = {});

struct RequiredReads {
  long long n_min = 0;
  long fold = 0;            // fold_raw rounded to the nearest integer
  double fold_raw = 0.0;    // n_min * E[L] / N
  double prob_at_n_min = 0.0;          // planning CDF at n_min
  double mixture_prob_at_n_min = 0.0;  // exact length mixture at n_min
  double expected_read_length = 0.0;
  PlanMethod method = PlanMethod::Auto;
};

// Smallest n with coverage probability >= target_prob, by geometric
// bracketing and integer bisection. Random lengths are planned against the
// deterministic equivalent l = (E[L]-I)/N, which keeps the probe function
// strictly monotone; the exact mixture probability at the solution is
// reported alongside. The simulation method is rejected here because MC
// noise breaks the monotone search.
RequiredReads required_reads(const CoveragePlan& plan,
                             const PlanOptions& opts = {});

// P(fewer than k regions lack r-fold coverage) = P(k-th largest r-spacing
// < segment fraction). k = 1 reduces to coverage_probability; k > 1 needs a
// rank-capable method (symmetric limit or simulation).
double uncovered_regions_probability(const CoveragePlan& plan, long long n,
                                     int k, const PlanOptions& opts = {});

}  // namespace spacings
