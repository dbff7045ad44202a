#include "spacings/limit_process.hpp"

#include <algorithm>
#include <cmath>

#include "spacings/gamma_tail.hpp"
#include "spacings/parallel.hpp"
#include "spacings/rng.hpp"

namespace spacings {

namespace {

// P(Gamma(j,1) <= c) for j far above c: leading term e^{-c} c^j / j! with the
// ratio recurrence c/(j+m+1). Converges in a handful of terms once j >> c.
double gamma_cdf_small(double j, double c) {
  if (c <= 0.0) return 0.0;
  double log_lead = -c + j * std::log(c) - std::lgamma(j + 1.0);
  if (log_lead < -745.0) return 0.0;
  double term = std::exp(log_lead);
  double sum = 0.0;
  for (int m = 0; m < 100000; ++m) {
    sum += term;
    term *= c / (j + m + 1.0);
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Keeps the k largest values seen; insertion into a small sorted array.
struct TopK {
  std::vector<double>& buf;  // size k, ascending, buf[0] is the k-th largest
  explicit TopK(std::vector<double>& b, int k) : buf(b) {
    buf.assign(static_cast<size_t>(k), -1e308);
  }
  void push(double v) {
    if (v <= buf[0]) return;
    size_t i = 1;
    for (; i < buf.size() && buf[i] < v; ++i) buf[i - 1] = buf[i];
    buf[i - 1] = v;
  }
  double kth() const { return buf[0]; }
};

}  // namespace

const char* limit_family_name(LimitFamily f) {
  switch (f) {
    case LimitFamily::Gumbel:
      return "gumbel";
    case LimitFamily::Frechet:
      return "frechet";
    case LimitFamily::Weibull:
      return "weibull";
  }
  return "?";
}

void LimitLawSpec::validate() const {
  check_arg(r >= 1, "limit law: r must be >= 1");
  check_arg(k >= 1 && k <= 4096, "limit law: k must lie in [1,4096]");
  check_arg(replicates >= 100, "limit law: need at least 100 replicates");
  check_arg(truncation >= 0, "limit law: truncation must be >= 0");
  if (family != LimitFamily::Gumbel)
    check_arg(a > 0.0, "limit law: tail index a must be positive");
  if (include_boundary)
    check_arg(family == LimitFamily::Weibull,
              "limit law: only the Weibull family has a boundary term");
}

long auto_truncation(const LimitLawSpec& spec, double x_min) {
  check_arg(x_min > 0.0, "auto_truncation: x_min must be positive");
  long j = static_cast<long>(std::ceil(20.0 * spec.r / x_min));
  return std::max<long>(10000, j);
}

double truncation_tail_bound(const LimitLawSpec& spec, long J, double x) {
  spec.validate();
  check_arg(J >= 1, "truncation bound: J must be >= 1");
  check_arg(x > 0.0, "truncation bound: x must be positive");
  const int r = spec.r;

  switch (spec.family) {
    case LimitFamily::Gumbel: {
      // Term j is at most a Gamma(r,1) variable divided by j, so
      // P(term_j > x) <= f_r(j x). f_r is log-concave, which makes the
      // consecutive-term ratio decreasing and justifies the geometric
      // remainder after the explicit partial sum.
      double sum = 0.0;
      double prev = 0.0;
      for (long j = J + 1; j <= J + 2000000; ++j) {
        double t = gamma_tail(r, static_cast<double>(j) * x);
        sum += t;
        if (t <= 0.0) return sum;
        if (prev > 0.0 && t < 1e-16 * sum) {
          double rho = t / prev;
          if (rho < 1.0) sum += t * rho / (1.0 - rho);
          return sum;
        }
        prev = t;
      }
      return sum + prev;  // loop cap hit; bound is conservative already
    }
    case LimitFamily::Frechet: {
      // term_j > x forces S_j < x^{-a}; summands decay factorially in j.
      double c = std::pow(x, -spec.a);
      double sum = 0.0;
      for (long j = J + 1; j <= J + 1000000; ++j) {
        double t = gamma_cdf_small(static_cast<double>(j), c);
        sum += t;
        if (t < 1e-16 * (sum + 1e-300)) break;
      }
      return sum;
    }
    case LimitFamily::Weibull: {
      // Split on S_j <= j/2. The Chernoff bound gives
      // P(S_j <= j/2) <= exp(-j (ln 2 - 1/2)); on the complement the mean
      // value theorem bounds the term by Gamma(r,1) (1/a) (j/2)^{1/a-1},
      // so P(term_j > x) <= f_r(a x (j/2)^{1-1/a}).
      const double delta = 0.6931471805599453 - 0.5;
      double sum = std::exp(-delta * (J + 1)) / (1.0 - std::exp(-delta));
      double prev = 0.0;
      for (long j = J + 1; j <= J + 2000000; ++j) {
        double arg = spec.a * x * std::pow(0.5 * j, 1.0 - 1.0 / spec.a);
        double t = gamma_tail(r, arg);
        sum += t;
        if (t <= 0.0) return sum;
        if (prev > 0.0 && t < 1e-16 * sum) {
          double rho = t / prev;
          if (rho < 1.0) sum += t * rho / (1.0 - rho);
          return sum;
        }
        prev = t;
      }
      return sum + prev;
    }
  }
  return 0.0;
}

double sample_limit_statistic(const LimitLawSpec& spec, std::mt19937_64& eng,
                              std::vector<double>& scratch) {
  const int r = spec.r;
  const long J = spec.truncation > 0 ? spec.truncation : auto_truncation(spec);
  TopK top(scratch, spec.k);

  // ring[m % r] holds the prefix value from r steps back; it is read just
  // before being overwritten, so P_{m-r} (or S_{m-r}) is always available.
  double ring[64];
  std::vector<double> big_ring;
  double* rb = ring;
  if (r > 64) {
    big_ring.assign(static_cast<size_t>(r), 0.0);
    rb = big_ring.data();
  } else {
    for (int i = 0; i < r; ++i) ring[i] = 0.0;
  }

  switch (spec.family) {
    case LimitFamily::Gumbel: {
      double p = 0.0;
      const long mmax = J + r - 1;
      for (long m = 1; m <= mmax; ++m) {
        p += exponential(eng) / static_cast<double>(m);
        long idx = m % r;
        if (m >= r) top.push(p - rb[idx]);
        rb[idx] = p;
      }
      break;
    }
    case LimitFamily::Frechet: {
      const double inv_a = 1.0 / spec.a;
      double s = 0.0;
      const long mmax = J + r;
      for (long m = 1; m <= mmax; ++m) {
        s += exponential(eng);
        long idx = m % r;
        if (m >= r + 1)
          top.push(std::pow(rb[idx], -inv_a) - std::pow(s, -inv_a));
        rb[idx] = s;
      }
      break;
    }
    case LimitFamily::Weibull: {
      const double inv_a = 1.0 / spec.a;
      const bool half = spec.a == 2.0;
      double s = 0.0;
      const long first = spec.include_boundary ? r : r + 1;
      const long mmax = J + r;
      for (long m = 1; m <= mmax; ++m) {
        s += exponential(eng);
        long idx = m % r;
        if (m >= first) {
          double hi_pow = half ? std::sqrt(s) : std::pow(s, inv_a);
          double lo = rb[idx];
          double lo_pow =
              lo <= 0.0 ? 0.0 : (half ? std::sqrt(lo) : std::pow(lo, inv_a));
          top.push(hi_pow - lo_pow);
        }
        rb[idx] = s;
      }
      break;
    }
  }
  return top.kth();
}

LimitLawEstimate::LimitLawEstimate(const LimitLawSpec& spec, int threads)
    : spec_(spec) {
  spec_.validate();
  truncation_ = spec.truncation > 0 ? spec.truncation : auto_truncation(spec);
  check_arg(truncation_ >= spec_.k,
            "limit law: truncation must be at least k");
  LimitLawSpec resolved = spec_;
  resolved.truncation = truncation_;

  std::vector<double> sample(static_cast<size_t>(spec_.replicates));
  parallel_blocks(spec_.replicates, threads, [&](long lo, long hi) {
    std::vector<double> scratch;
    for (long i = lo; i < hi; ++i) {
      auto eng = substream(spec_.master_seed, static_cast<std::uint64_t>(i));
      sample[static_cast<size_t>(i)] =
          sample_limit_statistic(resolved, eng, scratch);
    }
  });
  std::sort(sample.begin(), sample.end());
  ecdf_ = std::make_shared<const Ecdf>(std::move(sample));
}

double LimitLawEstimate::cdf(double x) const { return (*ecdf_)(x); }
double LimitLawEstimate::stderr_at(double x) const {
  return ecdf_->stderr_at(x);
}
double LimitLawEstimate::quantile(double p) const { return ecdf_->quantile(p); }

ProbabilityWithError cdf_limit_law(const LimitLawSpec& spec, double x,
                                   int threads) {
  LimitLawEstimate est(spec, threads);
  return {est.cdf(x), est.stderr_at(x)};
}

double ScaledSquaredLaw::cdf(double x) const {
  double h = law->cdf(x / scale);
  return h * h;
}

double ScaledSquaredLaw::stderr_at(double x) const {
  double h = law->cdf(x / scale);
  return 2.0 * h * law->stderr_at(x / scale);
}

double ScaledSquaredLaw::quantile(double p) const {
  check_arg(p >= 0.0 && p <= 1.0, "squared law: p must lie in [0,1]");
  return scale * law->quantile(std::sqrt(p));
}

namespace {

ScaledSquaredLaw build_squared_law(double scale, double a, int r, int k,
                                   const SymmetricLawOptions& opts) {
  LimitLawSpec spec;
  spec.family = LimitFamily::Weibull;
  spec.a = a;
  spec.r = r;
  spec.k = k;
  spec.truncation = opts.truncation;
  spec.replicates = opts.replicates;
  spec.master_seed = opts.master_seed;
  spec.include_boundary = opts.include_boundary;
  ScaledSquaredLaw out;
  out.law = std::make_shared<const LimitLawEstimate>(spec, opts.threads);
  out.scale = scale;
  return out;
}

}  // namespace

ScaledSquaredLaw symmetric_density_law(const DensityModel& model, double n,
                                       int r, int k,
                                       const SymmetricLawOptions& opts) {
  check_arg(n >= 4.0, "symmetric law: n must be >= 4");
  if (!model.symmetric())
    throw std::domain_error(
        "symmetric law: density is not symmetric about its midpoint");
  ExtremalType type = model.classify();
  if (type.family != ExtremalFamily::Weibull || type.index <= 1.0)
    throw std::domain_error(
        "symmetric law: requires a Weibull upper tail with index a > 1 "
        "(density vanishing at the endpoints); use the integral or mixture "
        "law for densities bounded away from zero");
  double n_eff = 2.0 * std::floor(n / 2.0);
  double scale = model.support_hi() - model.quantile(1.0 - 1.0 / n_eff);
  return build_squared_law(scale, type.index, r, k, opts);
}

ScaledSquaredLaw trapezoidal_law(double kappa, double n, int r, int k,
                                 const SymmetricLawOptions& opts) {
  check_arg(kappa > 0.0 && kappa <= 0.5,
            "trapezoidal law: kappa must lie in (0, 1/2]");
  check_arg(n >= 4.0, "trapezoidal law: n must be >= 4");
  double scale = std::sqrt(2.0 * kappa * (1.0 - kappa) / n);
  return build_squared_law(scale, 2.0, r, k, opts);
}

}  // namespace spacings
