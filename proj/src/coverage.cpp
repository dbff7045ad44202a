#include "spacings/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

#include <json.hpp>

#include "spacings/ecdf.hpp"
#include "spacings/exact.hpp"
#include "spacings/gumbel.hpp"
#include "spacings/limit_process.hpp"
#include "spacings/nonuniform.hpp"
#include "spacings/simulate.hpp"

namespace spacings {

void ReadModel::validate() const {
  check_arg(genome_length > 0.0, "read model: genome length must be positive");
  check_arg(overlap >= 0.0, "read model: overlap must be nonnegative");
  check_arg(length_sd >= 0.0, "read model: length sd must be nonnegative");
  check_arg(length_mean > overlap,
            "read model: read length must exceed the required overlap");
  check_arg(genome_length > length_mean,
            "read model: genome must be longer than a read");
}

double ReadModel::expected_length() const {
  if (!random()) return length_mean;
  // Mean of Normal(mu, sd) truncated to (I, N).
  double alpha = (overlap - length_mean) / length_sd;
  double beta = (genome_length - length_mean) / length_sd;
  double z = normal_cdf(beta) - normal_cdf(alpha);
  return length_mean +
         length_sd * (normal_pdf(alpha) - normal_pdf(beta)) / z;
}

double ReadModel::segment_fraction_quantile(double p) const {
  if (!random())
    return (length_mean - overlap) / genome_length;
  DensityModel len = DensityModel::truncated_normal(length_mean, length_sd,
                                                    overlap, genome_length);
  return (len.quantile(p) - overlap) / genome_length;
}

const char* plan_method_name(PlanMethod m) {
  switch (m) {
    case PlanMethod::Auto:
      return "auto";
    case PlanMethod::ExactR1:
      return "exact";
    case PlanMethod::Gamma:
      return "gamma";
    case PlanMethod::Integral:
      return "integral";
    case PlanMethod::SymmetricLimit:
      return "symmetric-limit";
    case PlanMethod::Simulation:
      return "simulation";
  }
  return "?";
}

PlanMethod plan_method_from_name(const std::string& name) {
  if (name == "auto") return PlanMethod::Auto;
  if (name == "exact") return PlanMethod::ExactR1;
  if (name == "gamma") return PlanMethod::Gamma;
  if (name == "integral") return PlanMethod::Integral;
  if (name == "symmetric-limit") return PlanMethod::SymmetricLimit;
  if (name == "simulation") return PlanMethod::Simulation;
  throw std::invalid_argument("unknown plan method '" + name + "'");
}

void CoveragePlan::validate() const {
  read.validate();
  check_arg(r >= 1, "coverage plan: r must be >= 1");
  check_arg(target_prob > 0.0 && target_prob < 1.0,
            "coverage plan: target probability must lie in (0,1)");
  check_arg(location.support_lo() == 0.0 && location.support_hi() == 1.0,
            "coverage plan: location density must live on [0,1] (genome "
            "positions are normalized)");
}

CoveragePlan CoveragePlan::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("plan config: ") + e.what());
  }
  try {
    CoveragePlan plan;
    plan.read.genome_length = j.at("genome_length").get<double>();
    plan.read.overlap = j.value("overlap", 0.0);
    const auto& read = j.at("read");
    if (read.contains("fixed")) {
      plan.read.length_mean = read.at("fixed").get<double>();
      plan.read.length_sd = 0.0;
    } else if (read.contains("normal")) {
      plan.read.length_mean = read.at("normal").at("mean").get<double>();
      plan.read.length_sd = read.at("normal").at("sd").get<double>();
    } else {
      throw std::invalid_argument(
          "plan config: read must be {\"fixed\":L} or "
          "{\"normal\":{\"mean\":..,\"sd\":..}}");
    }
    plan.r = j.value("r", 1);
    plan.target_prob = j.value("target_prob", 0.95);
    if (j.contains("location_density"))
      plan.location = DensityModel::from_json_text(j.at("location_density").dump());
    if (j.contains("method"))
      plan.method = plan_method_from_name(j.at("method").get<std::string>());
    plan.validate();
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("plan config: ") + e.what());
  }
}

PlanMethod resolve_method(const CoveragePlan& plan, int k) {
  plan.validate();
  check_arg(k >= 1, "coverage plan: k must be >= 1");
  const DensityKind kind = plan.location.kind();
  const bool uniform_like =
      kind == DensityKind::Uniform ||
      (kind == DensityKind::Trapezoidal && plan.location.trapezoid_kappa() == 0.0);

  PlanMethod m = plan.method;
  if (m == PlanMethod::Auto) {
    if (k > 1)
      m = kind == DensityKind::Trapezoidal && !uniform_like
              ? PlanMethod::SymmetricLimit
              : PlanMethod::Simulation;
    else if (uniform_like)
      m = PlanMethod::Gamma;
    else if (kind == DensityKind::Trapezoidal)
      m = PlanMethod::SymmetricLimit;
    else
      m = PlanMethod::Integral;
  }

  switch (m) {
    case PlanMethod::ExactR1:
      if (plan.r != 1 || k != 1 || !uniform_like)
        throw std::domain_error(
            "exact method handles only r = 1, k = 1 with a uniform location "
            "density");
      break;
    case PlanMethod::Gamma:
      if (!uniform_like)
        throw std::domain_error(
            "gamma approximation requires a uniform location density; use "
            "the integral or symmetric-limit method");
      if (k != 1)
        throw std::domain_error(
            "gamma approximation estimates the largest spacing only (k = 1)");
      break;
    case PlanMethod::Integral:
      if (plan.location.p_min() <= 0.0)
        throw std::domain_error(
            "integral method requires a density bounded away from zero; the "
            "symmetric-limit method covers vanishing endpoints");
      if (k != 1)
        throw std::domain_error(
            "integral method estimates the largest spacing only (k = 1)");
      break;
    case PlanMethod::SymmetricLimit: {
      if (!plan.location.symmetric())
        throw std::domain_error(
            "symmetric-limit method requires a symmetric location density");
      ExtremalType t = plan.location.classify();
      if (t.family != ExtremalFamily::Weibull || t.index <= 1.0)
        throw std::domain_error(
            "symmetric-limit method requires a density vanishing at the "
            "support endpoints (Weibull index > 1)");
      break;
    }
    case PlanMethod::Simulation:
      break;
    case PlanMethod::Auto:
      break;  // unreachable
  }
  return m;
}

namespace {

// The exact evaluator refuses where cancellation pushes its error bound
// past 1e-10; within its n and a domain that only happens when the true
// probability sits below that floor, so a planner probe reads it as zero.
// Violations of the domain itself still propagate.
double exact_probe(long n, double a) {
  try {
    return exact_max_spacing_cdf_r1(n, a);
  } catch (const std::domain_error&) {
    if (n >= 1 && n <= kExactR1MaxN && a >= 0.0 && a <= 1.0) return 0.0;
    throw;
  }
}

// CDF of the k-th largest r-spacing at a given n, evaluated at the raw
// (unscaled) segment fraction s. Built once per n so that a random-length
// mixture can probe many s values cheaply.
class SpacingCdf {
 public:
  SpacingCdf(const CoveragePlan& plan, PlanMethod m, long long n, int k,
             const PlanOptions& opts)
      : plan_(plan), method_(m), n_(n), k_(k), opts_(opts) {
    if (m == PlanMethod::SymmetricLimit) {
      SymmetricLawOptions lopts;
      lopts.replicates = opts.replicates;
      lopts.master_seed = opts.seed;
      lopts.include_boundary = true;
      lopts.threads = opts.threads;
      law_.emplace(symmetric_density_law(plan.location, static_cast<double>(n),
                                         plan.r, k, lopts));
    } else if (m == PlanMethod::Simulation) {
      SimulationSpec spec;
      spec.query = {static_cast<long>(n), plan.r, k};
      spec.model = plan.location;
      spec.boundary = Boundary::WithEnds;
      spec.replicates = opts.replicates;
      spec.master_seed = opts.seed;
      ecdf_.emplace(simulate_kth_max_rspacing(spec, opts.threads));
    }
  }

  double operator()(double s) const {
    if (s <= 0.0) return 0.0;
    double nd = static_cast<double>(n_);
    switch (method_) {
      case PlanMethod::ExactR1:
        return exact_probe(static_cast<long>(n_), s);
      case PlanMethod::Gamma:
        return cdf_gamma_approx(nd, plan_.r, nd * s);
      case PlanMethod::Integral: {
        DensityIntegralOptions dopts;
        dopts.quad = opts_.quad;
        return cdf_density_integral(plan_.location, nd, plan_.r, nd * s, dopts);
      }
      case PlanMethod::SymmetricLimit:
        return law_->cdf(s);
      case PlanMethod::Simulation:
        return (*ecdf_)(s);
      default:
        throw std::logic_error("unresolved plan method");
    }
  }

 private:
  const CoveragePlan& plan_;
  PlanMethod method_;
  long long n_;
  int k_;
  PlanOptions opts_;
  std::optional<ScaledSquaredLaw> law_;
  std::optional<Ecdf> ecdf_;
};

// 128-node Gauss-Legendre mixture over the length law in the probability
// domain: int_0^1 P(M < y(t)) dt with y the segment-fraction quantile.
double mixture_probability(const ReadModel& read, const SpacingCdf& cdf) {
  const auto& nodes = gl_nodes(128);
  const auto& weights = gl_weights(128);
  double acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    double t = 0.5 * (nodes[i] + 1.0);
    acc += weights[i] * cdf(read.segment_fraction_quantile(t));
  }
  return 0.5 * acc;
}

double kth_probability(const CoveragePlan& plan, long long n, int k,
                       const PlanOptions& opts) {
  plan.validate();
  check_arg(n >= plan.r, "coverage: n must be at least r");
  PlanMethod m = resolve_method(plan, k);
  SpacingCdf cdf(plan, m, n, k, opts);
  if (plan.read.random()) return mixture_probability(plan.read, cdf);
  return cdf(plan.read.segment_fraction_quantile(0.5));
}

}  // namespace

double coverage_probability(const CoveragePlan& plan, long long n,
                            const PlanOptions& opts) {
  return kth_probability(plan, n, 1, opts);
}

double uncovered_regions_probability(const CoveragePlan& plan, long long n,
                                     int k, const PlanOptions& opts) {
  return kth_probability(plan, n, k, opts);
}

RequiredReads required_reads(const CoveragePlan& plan,
                             const PlanOptions& opts) {
  plan.validate();
  PlanMethod m = resolve_method(plan, 1);
  if (m == PlanMethod::Simulation)
    throw std::domain_error(
        "required_reads: the simulation method is not monotone in n at "
        "finite replicates; pick a deterministic method");

  const double E = plan.read.expected_length();
  const double l = (E - plan.read.overlap) / plan.read.genome_length;
  check_arg(l > 0.0, "required_reads: expected segment length must be positive");

  // The symmetric-limit law is n-free up to its scale, so one MC build
  // serves every probe; only the scale is recomputed.
  std::optional<ScaledSquaredLaw> law;
  auto prob_at = [&](long long n) -> double {
    if (n < plan.r) return 0.0;
    double nd = static_cast<double>(n);
    switch (m) {
      case PlanMethod::ExactR1:
        return exact_probe(static_cast<long>(n), l);
      case PlanMethod::Gamma:
        return cdf_gamma_approx(nd, plan.r, nd * l);
      case PlanMethod::Integral: {
        DensityIntegralOptions dopts;
        dopts.quad = opts.quad;
        return cdf_density_integral(plan.location, nd, plan.r, nd * l, dopts);
      }
      case PlanMethod::SymmetricLimit: {
        if (!law) {
          SymmetricLawOptions lopts;
          lopts.replicates = opts.replicates;
          lopts.master_seed = opts.seed;
          lopts.include_boundary = true;
          lopts.threads = opts.threads;
          law.emplace(symmetric_density_law(plan.location, nd, plan.r, 1,
                                            lopts));
        }
        double n_eff = 2.0 * std::floor(nd / 2.0);
        double scale = plan.location.support_hi() -
                       plan.location.quantile(1.0 - 1.0 / n_eff);
        double h = law->law->cdf(l / scale);
        return h * h;
      }
      default:
        throw std::logic_error("unresolved plan method");
    }
  };

  // Geometric bracket, then integer bisection on the monotone probe.
  const long long cap = 1LL << 60;
  long long lo = plan.r > 1 ? plan.r - 1 : 0;  // prob 0 below r reads
  long long hi = std::max<long long>(plan.r, 4);
  while (prob_at(hi) < plan.target_prob) {
    if (hi >= cap)
      throw std::runtime_error(
          "required_reads: no read count below 2^60 reaches the target "
          "probability");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (prob_at(mid) >= plan.target_prob)
      hi = mid;
    else
      lo = mid;
  }

  RequiredReads out;
  out.n_min = hi;
  out.expected_read_length = E;
  out.fold_raw =
      static_cast<double>(out.n_min) * E / plan.read.genome_length;
  out.fold = static_cast<long>(std::llround(out.fold_raw));
  out.prob_at_n_min = prob_at(out.n_min);
  out.method = m;
  out.mixture_prob_at_n_min =
      plan.read.random() ? coverage_probability(plan, out.n_min, opts)
                         : out.prob_at_n_min;
  return out;
}

}  // namespace spacings
