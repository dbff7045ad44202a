#pragma once

#include <cstdint>
#include <vector>

#include "spacings/density.hpp"
#include "spacings/types.hpp"

namespace spacings {

// Monte Carlo study of the k-th largest r-spacing of n points drawn from a
// location density. Replicate i is driven by substream(master_seed, i), so
// output is a pure function of the spec for every thread count.
struct SimulationSpec {
  SpacingQuery query;
  DensityModel model = DensityModel::uniform(0.0, 1.0);
  Boundary boundary = Boundary::WithEnds;
  long replicates = 6000;
  std::uint64_t master_seed = 0;
};

// Sorted sample of the statistic, one value per replicate. Sorted uniforms
// are produced as normalized exponential partial sums (no per-replicate
// sort) and pushed through the model's monotone quantile transform.
std::vector<double> simulate_kth_max_rspacing(const SimulationSpec& spec,
                                              int threads = 0);

// Type-7 empirical quantiles of an already sorted sample.
std::vector<double> empirical_quantiles(const std::vector<double>& sorted,
                                        const std::vector<double>& probs);

// Sorted sample of max(G_1..G_n)/n with G_i iid Gamma(r,1); the classical
// comparison statistic for the uniform maximal r-spacing.
std::vector<double> simulate_scaled_gamma_max(long n, int r, long replicates,
                                              std::uint64_t seed,
                                              int threads = 0);

// One-sided check that the joint law of the n overlapping r-blocks of
// n+r-1 exponentials is positively associated: the probability that every
// block sum stays below x must dominate the independent-blocks product.
struct AssociationCheck {
  double lhs = 0.0;        // MC estimate of P(all block sums < x)
  double rhs = 0.0;        // product bound (1 - F_r-tail(x))^n
  double stderr_lhs = 0.0;
  bool pass = false;       // lhs >= rhs - 3 stderr
};
AssociationCheck check_association_inequality(long n, int r, double x,
                                              long replicates,
                                              std::uint64_t seed,
                                              int threads = 0);

}  // namespace spacings
