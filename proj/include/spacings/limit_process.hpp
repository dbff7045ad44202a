#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "spacings/density.hpp"
#include "spacings/ecdf.hpp"
#include "spacings/types.hpp"

namespace spacings {

// Family of the limiting point-process law for the k-th largest r-spacing
// after norming. The statistic is the k-th largest term of
//   Gumbel:  sum_{l=1}^{r} E_{j+l-1}/(j+l-1),            j >= 1
//   Frechet: S_j^{-1/a} - S_{j+r}^{-1/a},                 j >= 1
//   Weibull: S_{j+r}^{1/a} - S_j^{1/a},                   j >= 1
// with E_i iid unit exponentials and S_j their partial sums. For the Weibull
// family the j = 0 term S_r^{1/a} exists and include_boundary adds it.
enum class LimitFamily { Gumbel, Frechet, Weibull };

const char* limit_family_name(LimitFamily f);

struct LimitLawSpec {
  LimitFamily family = LimitFamily::Gumbel;
  double a = 1.0;  // tail index, used by Frechet and Weibull only
  int r = 1;
  int k = 1;
  long truncation = 0;  // terms kept per replicate; 0 picks a default
  long replicates = 100000;
  std::uint64_t master_seed = 0;
  bool include_boundary = false;
  void validate() const;
};

// Truncation J used when spec.truncation is 0: enough terms that everything
// beyond J is negligible for evaluation points x >= x_min.
long auto_truncation(const LimitLawSpec& spec, double x_min = 0.02);

// Upper bound on the probability that any term with index beyond J exceeds
// x, i.e. on the truncation error of the sampled law at x.
double truncation_tail_bound(const LimitLawSpec& spec, long J, double x);

// One replicate of the truncated statistic. scratch is reused storage.
double sample_limit_statistic(const LimitLawSpec& spec, std::mt19937_64& eng,
                              std::vector<double>& scratch);

struct ProbabilityWithError {
  double value = 0.0;
  double stderr_value = 0.0;
};

// Monte Carlo estimate of the law, built once and queried many times.
// Deterministic in (spec) for every thread count.
class LimitLawEstimate {
 public:
  explicit LimitLawEstimate(const LimitLawSpec& spec, int threads = 0);

  double cdf(double x) const;
  double stderr_at(double x) const;
  double quantile(double p) const;

  const Ecdf& ecdf() const { return *ecdf_; }
  const LimitLawSpec& spec() const { return spec_; }
  long truncation() const { return truncation_; }

 private:
  LimitLawSpec spec_;
  long truncation_ = 0;
  std::shared_ptr<const Ecdf> ecdf_;
};

// One-off evaluation; builds a full estimate internally.
ProbabilityWithError cdf_limit_law(const LimitLawSpec& spec, double x,
                                   int threads = 0);

// Law of a statistic distributed as scale * H where the squared cdf applies:
//   P(M <= x) = H(x/scale)^2.
// Arises for symmetric densities whose two tail halves contribute
// independent copies of the same limit law.
struct ScaledSquaredLaw {
  std::shared_ptr<const LimitLawEstimate> law;
  double scale = 1.0;

  double cdf(double x) const;
  double stderr_at(double x) const;
  double quantile(double p) const;
};

struct SymmetricLawOptions {
  long replicates = 100000;
  std::uint64_t master_seed = 0;
  long truncation = 0;
  bool include_boundary = false;
  int threads = 0;
};

// Squared-law approximation for the k-th largest r-spacing of n points from
// a symmetric density whose extremal type is Weibull with index a > 1.
// scale is the upper-tail norming B - Q(1 - 1/n_eff) with n_eff = 2 floor(n/2)
// (each symmetric half receives n_eff/2 points). Throws std::domain_error
// for asymmetric models or index a <= 1.
ScaledSquaredLaw symmetric_density_law(const DensityModel& model, double n,
                                       int r, int k,
                                       const SymmetricLawOptions& opts = {});

// Same law for the trapezoidal density with the closed-form scale
// sqrt(2 kappa (1-kappa) / n). kappa in (0, 1/2].
ScaledSquaredLaw trapezoidal_law(double kappa, double n, int r, int k,
                                 const SymmetricLawOptions& opts = {});

}  // namespace spacings
