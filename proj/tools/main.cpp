// Command-line frontend for the spacings library: CDF and quantile
// evaluation, Monte Carlo simulation, limit-law sampling, coverage planning,
// reference tables, and a self-check suite.
//
// Conventions shared by every subcommand:
//   - all randomness flows from --seed (default 0, echoed to stderr);
//   - --threads only changes wall time, never output bytes;
//   - CSV uses '.' decimals and scientific notation with 6 significant
//     digits; --output json emits an array of row objects instead;
//   - exit codes: 0 success, 1 failed invariant (check), 2 usage or config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spacings/coverage.hpp"
#include "spacings/ecdf.hpp"
#include "spacings/exact.hpp"
#include "spacings/gamma_tail.hpp"
#include "spacings/gumbel.hpp"
#include "spacings/limit_process.hpp"
#include "spacings/nonuniform.hpp"
#include "spacings/simulate.hpp"
#include "spacings/spacing_vector.hpp"
#include "spacings/types.hpp"

namespace {

using nlohmann::json;
using namespace spacings;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

// Row-oriented output buffer; one table per command invocation.
struct Output {
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;
  bool as_json = false;

  void add(std::vector<json> r) { rows.push_back(std::move(r)); }

  void print() const {
    if (as_json) {
      json arr = json::array();
      for (const auto& r : rows) {
        json obj;
        for (size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = r[i];
        arr.push_back(obj);
      }
      std::cout << arr.dump(2) << "\n";
      return;
    }
    for (size_t i = 0; i < cols.size(); ++i)
      std::cout << (i ? "," : "") << cols[i];
    std::cout << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) {
        if (i) std::cout << ",";
        if (r[i].is_null())
          ;  // empty cell
        else if (r[i].is_number_float())
          std::cout << fmt(r[i].get<double>());
        else if (r[i].is_number_integer())
          std::cout << r[i].get<long long>();
        else
          std::cout << r[i].get<std::string>();
      }
      std::cout << "\n";
    }
  }
};

// Flags common to every stochastic or table-producing subcommand.
struct Common {
  std::uint64_t seed = 0;
  long replicates = 0;  // 0 keeps the per-command default
  int threads = 0;
  std::string output = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master RNG seed (default 0)");
    cmd->add_option("--replicates", replicates, "Monte Carlo replicates");
    cmd->add_option("--threads", threads,
                    "worker threads (0 = hardware default)");
    cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  long reps(long fallback) const { return replicates > 0 ? replicates : fallback; }
};

// --density accepts inline JSON or a path to a JSON file.
DensityModel load_density(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return DensityModel::from_json_text(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open density file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return DensityModel::from_json_text(ss.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<double> kDefaultLevels{0.05, 0.25, 0.5, 0.75, 0.95};

// Delta-method standard error of an empirical type-7 quantile: the +-1
// sigma band of the ECDF level mapped through the quantile function.
double quantile_stderr(const std::vector<double>& sorted, double p) {
  double R = static_cast<double>(sorted.size());
  double e = std::sqrt(p * (1.0 - p) / R);
  double plo = std::max(p - e, 0.5 / R), phi = std::min(p + e, 1.0 - 0.5 / R);
  return 0.5 * (quantile_type7(sorted, phi) - quantile_type7(sorted, plo));
}

// CdfEstimate wrappers over the density-integral laws, raw axis like the
// other make_*_estimate factories, so the generic quantile inversion applies.
CdfEstimate integral_estimate(const DensityModel& model, double n, int r,
                              const DensityIntegralOptions& opts) {
  CdfEstimate base = make_gamma_estimate(static_cast<long>(n), r);
  CdfEstimate est;
  est.method = CdfMethod::DensityIntegral;
  est.eval = [model, n, r, opts](double s) {
    return cdf_density_integral(model, n, r, n * s, opts);
  };
  est.support_lo = base.support_lo * 0.5;
  est.support_hi = base.support_hi * 2.0;
  return est;
}

CdfEstimate empirical_integral_estimate(
    const DensityModel& model, double n, int r,
    const std::shared_ptr<EmpiricalSpacingTail>& tail, bool allow_vanishing) {
  CdfEstimate base = make_gamma_estimate(static_cast<long>(n), r);
  CdfEstimate est;
  est.method = CdfMethod::DensityIntegral;
  est.eval = [model, n, tail, allow_vanishing](double s) {
    DensityIntegralOptions opts;
    opts.quad.order = 16;
    opts.quad.panels = 256;
    opts.allow_vanishing_density = allow_vanishing;
    return cdf_density_integral(model, n, *tail, n * s, opts);
  };
  est.support_lo = base.support_lo * 0.5;
  est.support_hi = base.support_hi * 2.0;
  return est;
}

// ---------------------------------------------------------------- cdf ----

struct CdfArgs {
  Common common;
  long long n = 0;
  int r = 1, k = 1;
  double x = -1.0, s = -1.0;
  std::string grid;  // lo:hi:count on the scaled axis
  std::string method = "auto";
  std::string density;
  bool allow_vanishing = false;
};

int run_cdf(const CdfArgs& a) {
  check_arg(a.n >= 1, "cdf: --n must be >= 1");
  check_arg(a.r >= 1 && a.k >= 1, "cdf: --r and --k must be >= 1");
  std::optional<DensityModel> model;
  if (!a.density.empty()) model = load_density(a.density);

  std::vector<double> xs;
  if (!a.grid.empty()) {
    double lo, hi;
    long count;
    if (std::sscanf(a.grid.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) != 3 ||
        count < 2 || hi <= lo)
      throw std::invalid_argument("cdf: --grid must be lo:hi:count");
    for (long i = 0; i < count; ++i)
      xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  } else if (a.x >= 0.0) {
    xs.push_back(a.x);
  } else if (a.s >= 0.0) {
    xs.push_back(a.s * static_cast<double>(a.n));
  } else {
    throw std::invalid_argument("cdf: give --x (scaled), --s (raw) or --grid");
  }

  std::string method = a.method;
  if (method == "auto")
    method = model && model->kind() != DensityKind::Uniform ? "integral" : "gamma";
  const bool nonuniform = model && model->kind() != DensityKind::Uniform;
  if ((method == "exact" || method == "gamma" || method == "gumbel") && nonuniform)
    throw std::invalid_argument(
        "cdf: method '" + method + "' applies to the uniform density only");
  if (a.k > 1 && method != "simulation")
    throw std::invalid_argument("cdf: only --method simulation supports k > 1");

  const double nd = static_cast<double>(a.n);
  std::optional<Ecdf> sim;
  std::shared_ptr<EmpiricalSpacingTail> tail;
  if (method == "simulation") {
    SimulationSpec spec;
    spec.query = {static_cast<long>(a.n), a.r, a.k};
    if (model) spec.model = *model;
    spec.replicates = a.common.reps(100000);
    spec.master_seed = a.common.seed;
    sim.emplace(simulate_kth_max_rspacing(spec, a.common.threads));
  } else if (method == "empirical-integral") {
    tail = std::make_shared<EmpiricalSpacingTail>(
        static_cast<long>(a.n), a.r, a.common.reps(200000), a.common.seed,
        a.common.threads);
  }

  Output out;
  out.as_json = a.common.output == "json";
  out.cols = {"x_scaled", "s_raw", "n", "r", "k", "method", "probability",
              "stderr"};
  for (double x : xs) {
    double p = 0.0;
    json se;
    if (method == "exact") {
      check_arg(a.r == 1, "cdf: exact method is r = 1 only");
      p = exact_max_spacing_cdf_r1(static_cast<long>(a.n), x / nd);
    } else if (method == "gamma") {
      p = cdf_gamma_approx(nd, a.r, x);
    } else if (method == "gumbel") {
      p = cdf_gumbel_classic(nd, a.r, x);
    } else if (method == "mixture") {
      check_arg(model.has_value(), "cdf: mixture method needs --density");
      p = cdf_step_mixture(*model, nd, a.r, x);
    } else if (method == "step-limit") {
      check_arg(model.has_value(), "cdf: step-limit method needs --density");
      p = cdf_step_gumbel_limit(*model, nd, a.r, x);
    } else if (method == "integral") {
      check_arg(model.has_value(), "cdf: integral method needs --density");
      DensityIntegralOptions opts;
      opts.allow_vanishing_density = a.allow_vanishing;
      p = cdf_density_integral(*model, nd, a.r, x, opts);
    } else if (method == "empirical-integral") {
      check_arg(model.has_value(),
                "cdf: empirical-integral method needs --density");
      DensityIntegralOptions opts;
      opts.quad.order = 16;
      opts.quad.panels = 256;
      opts.allow_vanishing_density = a.allow_vanishing;
      p = cdf_density_integral(*model, nd, *tail, x, opts);
    } else if (method == "simulation") {
      p = (*sim)(x / nd);
      se = sim->stderr_at(x / nd);
    } else {
      throw std::invalid_argument("cdf: unknown method '" + method + "'");
    }
    out.add({x, x / nd, static_cast<long long>(a.n), a.r, a.k, method, p, se});
  }
  out.print();
  return 0;
}

// ----------------------------------------------------------- quantile ----

struct QuantileArgs {
  Common common;
  long long n = 0;
  int r = 1, k = 1;
  std::vector<double> levels;
  std::string method = "gamma";
  std::string density;
  bool allow_vanishing = false;
  bool include_boundary = false;
};

int run_quantile(const QuantileArgs& a) {
  check_arg(a.n >= 1, "quantile: --n must be >= 1");
  const std::vector<double>& ps = a.levels.empty() ? kDefaultLevels : a.levels;
  for (double p : ps)
    check_arg(p > 0.0 && p < 1.0, "quantile: levels must lie in (0,1)");
  std::optional<DensityModel> model;
  if (!a.density.empty()) model = load_density(a.density);
  const double nd = static_cast<double>(a.n);

  Output out;
  out.as_json = a.common.output == "json";
  out.cols = {"p", "n", "r", "k", "method", "quantile", "quantile_scaled",
              "stderr"};

  auto emit = [&](double p, double raw, json se) {
    out.add({p, static_cast<long long>(a.n), a.r, a.k, a.method, raw, raw * nd,
             std::move(se)});
  };

  if (a.method == "gamma") {
    CdfEstimate est = make_gamma_estimate(static_cast<long>(a.n), a.r);
    for (double p : ps) emit(p, quantile(est, p), {});
  } else if (a.method == "corrected") {
    for (double p : ps) {
      double xp = -std::log(-std::log(p));
      double b = solve_corrected_shift(nd, a.r, xp);
      emit(p, (b + xp) / nd, {});
    }
  } else if (a.method == "gumbel") {
    for (double p : ps)
      emit(p, (gumbel_b(nd, a.r) - std::log(-std::log(p))) / nd, {});
  } else if (a.method == "exact") {
    check_arg(a.r == 1, "quantile: exact method is r = 1 only");
    CdfEstimate est = make_exact_r1_estimate(static_cast<long>(a.n));
    for (double p : ps) emit(p, quantile(est, p), {});
  } else if (a.method == "integral") {
    check_arg(model.has_value(), "quantile: integral method needs --density");
    DensityIntegralOptions opts;
    opts.allow_vanishing_density = a.allow_vanishing;
    CdfEstimate est = integral_estimate(*model, nd, a.r, opts);
    for (double p : ps) emit(p, quantile(est, p), {});
  } else if (a.method == "empirical-integral") {
    check_arg(model.has_value(),
              "quantile: empirical-integral method needs --density");
    auto tail = std::make_shared<EmpiricalSpacingTail>(
        static_cast<long>(a.n), a.r, a.common.reps(200000), a.common.seed,
        a.common.threads);
    CdfEstimate est =
        empirical_integral_estimate(*model, nd, a.r, tail, a.allow_vanishing);
    for (double p : ps) emit(p, quantile(est, p), {});
  } else if (a.method == "squared-limit") {
    check_arg(model.has_value(),
              "quantile: squared-limit method needs --density");
    SymmetricLawOptions opts;
    opts.replicates = a.common.reps(100000);
    opts.master_seed = a.common.seed;
    opts.include_boundary = a.include_boundary;
    opts.threads = a.common.threads;
    ScaledSquaredLaw law = symmetric_density_law(*model, nd, a.r, a.k, opts);
    for (double p : ps) emit(p, law.quantile(p), {});
  } else if (a.method == "simulation") {
    SimulationSpec spec;
    spec.query = {static_cast<long>(a.n), a.r, a.k};
    if (model) spec.model = *model;
    spec.replicates = a.common.reps(100000);
    spec.master_seed = a.common.seed;
    auto sample = simulate_kth_max_rspacing(spec, a.common.threads);
    for (double p : ps)
      emit(p, quantile_type7(sample, p), quantile_stderr(sample, p));
  } else {
    throw std::invalid_argument("quantile: unknown method '" + a.method + "'");
  }
  out.print();
  return 0;
}

// ----------------------------------------------------------- simulate ----

struct SimulateArgs {
  Common common;
  long long n = 0;
  int r = 1, k = 1;
  std::string density;
  std::string boundary = "with-ends";
  std::vector<double> levels;
};

int run_simulate(const SimulateArgs& a) {
  check_arg(a.n >= 1, "simulate: --n must be >= 1");
  SimulationSpec spec;
  spec.query = {static_cast<long>(a.n), a.r, a.k};
  if (!a.density.empty()) spec.model = load_density(a.density);
  if (a.boundary == "interior")
    spec.boundary = Boundary::Interior;
  else
    check_arg(a.boundary == "with-ends",
              "simulate: --boundary must be with-ends or interior");
  spec.replicates = a.common.reps(6000);
  spec.master_seed = a.common.seed;
  auto sample = simulate_kth_max_rspacing(spec, a.common.threads);

  const std::vector<double>& ps = a.levels.empty() ? kDefaultLevels : a.levels;
  Output out;
  out.as_json = a.common.output == "json";
  out.cols = {"p", "n", "r", "k", "boundary", "replicates", "quantile",
              "quantile_scaled", "stderr"};
  for (double p : ps) {
    double q = quantile_type7(sample, p);
    out.add({p, static_cast<long long>(a.n), a.r, a.k, a.boundary,
             static_cast<long long>(spec.replicates), q,
             q * static_cast<double>(a.n), quantile_stderr(sample, p)});
  }
  out.print();
  return 0;
}

// ---------------------------------------------------------- limit-law ----

struct LimitArgs {
  Common common;
  std::string family = "gumbel";
  double a = 1.0;
  int r = 1, k = 1;
  long truncation = 0;
  bool include_boundary = false;
  std::vector<double> xs;
  std::vector<double> levels;
};

int run_limit_law(const LimitArgs& a) {
  LimitLawSpec spec;
  if (a.family == "gumbel")
    spec.family = LimitFamily::Gumbel;
  else if (a.family == "frechet")
    spec.family = LimitFamily::Frechet;
  else if (a.family == "weibull")
    spec.family = LimitFamily::Weibull;
  else
    throw std::invalid_argument("limit-law: unknown family '" + a.family + "'");
  spec.a = a.a;
  spec.r = a.r;
  spec.k = a.k;
  spec.truncation = a.truncation;
  spec.replicates = a.common.reps(100000);
  spec.master_seed = a.common.seed;
  spec.include_boundary = a.include_boundary;
  check_arg(!a.xs.empty() || !a.levels.empty(),
            "limit-law: give --x points and/or --p levels");

  LimitLawEstimate est(spec, a.common.threads);
  Output out;
  out.as_json = a.common.output == "json";
  out.cols = {"family", "a", "r", "k", "kind", "arg", "value", "stderr",
              "truncation_bound"};
  for (double x : a.xs) {
    out.add({a.family, spec.a, spec.r, spec.k, "cdf", x, est.cdf(x),
             est.stderr_at(x),
             truncation_tail_bound(spec, est.truncation(), x)});
  }
  for (double p : a.levels) {
    check_arg(p > 0.0 && p < 1.0, "limit-law: levels must lie in (0,1)");
    out.add({a.family, spec.a, spec.r, spec.k, "quantile", p, est.quantile(p),
             quantile_stderr(est.ecdf().values(), p), json{}});
  }
  out.print();
  return 0;
}

// --------------------------------------------------------------- plan ----

struct PlanArgs {
  Common common;
  std::string config;
  double genome = 0.0, overlap = 0.0, length = 0.0, sd = 0.0;
  int r = 1, k = 1;
  double target = 0.95;
  std::string density;
  std::string method = "auto";
  long long reads = 0;  // 0 solves for n_min; otherwise evaluates coverage
};

int run_plan(const PlanArgs& a) {
  CoveragePlan plan;
  if (!a.config.empty()) {
    plan = CoveragePlan::from_json_text(read_file(a.config));
  } else {
    check_arg(a.genome > 0.0 && a.length > 0.0,
              "plan: give --config or at least --genome and --read-length");
    plan.read = {a.genome, a.overlap, a.length, a.sd};
    plan.r = a.r;
    plan.target_prob = a.target;
    if (!a.density.empty()) plan.location = load_density(a.density);
    plan.method = plan_method_from_name(a.method);
  }
  PlanOptions opts;
  opts.seed = a.common.seed;
  opts.replicates = a.common.reps(100000);
  opts.threads = a.common.threads;

  Output out;
  out.as_json = a.common.output == "json";
  if (a.reads > 0) {
    double p = a.k == 1 ? coverage_probability(plan, a.reads, opts)
                        : uncovered_regions_probability(plan, a.reads, a.k, opts);
    out.cols = {"n", "r", "k", "method", "probability"};
    out.add({static_cast<long long>(a.reads), plan.r, a.k,
             plan_method_name(resolve_method(plan, a.k)), p});
  } else {
    RequiredReads rr = required_reads(plan, opts);
    out.cols = {"n_min", "fold", "fold_raw", "prob_at_n_min",
                "mixture_prob_at_n_min", "expected_read_length", "method"};
    out.add({static_cast<long long>(rr.n_min), static_cast<long long>(rr.fold),
             rr.fold_raw, rr.prob_at_n_min, rr.mixture_prob_at_n_min,
             rr.expected_read_length, plan_method_name(rr.method)});
  }
  out.print();
  return 0;
}

// ------------------------------------------------------------- tables ----

// Built-in reference tables. Values are raw quantiles of the spacing (or
// integer folds for table 5); the conventional display multipliers are
// 1e-3 (table 1), 1e-4 (table 2), 1e-3 (table 3), 1e-2 (table 4).
struct TablesArgs {
  Common common;
  int id = 0;
};

void table_quantile_rows(Output& out, int table, long n, int r,
                         const std::string& method,
                         const std::vector<double>& qs,
                         const std::vector<double>& ses) {
  for (size_t i = 0; i < kDefaultLevels.size(); ++i) {
    json se;
    if (!ses.empty()) se = ses[i];
    out.add({table, kDefaultLevels[i], static_cast<long long>(n), r, method,
             qs[i], se});
  }
}

void run_table_uniform(Output& out, int table, long n, const Common& common) {
  for (int r : {1, 5}) {
    {
      SimulationSpec spec;
      spec.query = {n, r, 1};
      spec.replicates = common.reps(6000);
      spec.master_seed = common.seed;
      auto sample = simulate_kth_max_rspacing(spec, common.threads);
      std::vector<double> qs, ses;
      for (double p : kDefaultLevels) {
        qs.push_back(quantile_type7(sample, p));
        ses.push_back(quantile_stderr(sample, p));
      }
      table_quantile_rows(out, table, n, r, "empirical", qs, ses);
    }
    {
      auto sample = simulate_scaled_gamma_max(n, r, common.reps(6000),
                                              common.seed + 1, common.threads);
      std::vector<double> qs, ses;
      for (double p : kDefaultLevels) {
        qs.push_back(quantile_type7(sample, p));
        ses.push_back(quantile_stderr(sample, p));
      }
      table_quantile_rows(out, table, n, r, "gamma-max", qs, ses);
    }
    {
      CdfEstimate est = make_gamma_estimate(n, r);
      std::vector<double> qs;
      for (double p : kDefaultLevels)
        qs.push_back(quantile(est, p));
      table_quantile_rows(out, table, n, r, "gamma", qs, {});
    }
    {
      std::vector<double> qs;
      for (double p : kDefaultLevels)
        qs.push_back((gumbel_b(static_cast<double>(n), r) -
                      std::log(-std::log(p))) /
                     static_cast<double>(n));
      table_quantile_rows(out, table, n, r, "gumbel", qs, {});
    }
  }
}

void run_table_3(Output& out, const Common& common) {
  const long n = 10000;
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  for (int r : {1, 5}) {
    {
      SimulationSpec spec;
      spec.query = {n, r, 1};
      spec.model = tn;
      spec.replicates = common.reps(6000);
      spec.master_seed = common.seed;
      auto sample = simulate_kth_max_rspacing(spec, common.threads);
      std::vector<double> qs, ses;
      for (double p : kDefaultLevels) {
        qs.push_back(quantile_type7(sample, p));
        ses.push_back(quantile_stderr(sample, p));
      }
      table_quantile_rows(out, 3, n, r, "empirical", qs, ses);
    }
    {
      auto tail = std::make_shared<EmpiricalSpacingTail>(
          n, r, common.reps(200000), common.seed + 1, common.threads);
      CdfEstimate est =
          empirical_integral_estimate(tn, static_cast<double>(n), r, tail, false);
      std::vector<double> qs;
      for (double p : kDefaultLevels)
        qs.push_back(quantile(est, p));
      table_quantile_rows(out, 3, n, r, "empirical-integral", qs, {});
    }
    {
      CdfEstimate est = integral_estimate(tn, static_cast<double>(n), r, {});
      std::vector<double> qs;
      for (double p : kDefaultLevels)
        qs.push_back(quantile(est, p));
      table_quantile_rows(out, 3, n, r, "integral", qs, {});
    }
  }
}

void run_table_4(Output& out, const Common& common) {
  const long n = 10000;
  auto tri = DensityModel::trapezoidal(0.5);
  for (int r : {1, 5}) {
    {
      SimulationSpec spec;
      spec.query = {n, r, 1};
      spec.model = tri;
      spec.boundary = Boundary::Interior;
      spec.replicates = common.reps(6000);
      spec.master_seed = common.seed;
      auto sample = simulate_kth_max_rspacing(spec, common.threads);
      std::vector<double> qs, ses;
      for (double p : kDefaultLevels) {
        qs.push_back(quantile_type7(sample, p));
        ses.push_back(quantile_stderr(sample, p));
      }
      table_quantile_rows(out, 4, n, r, "empirical", qs, ses);
    }
    {
      SymmetricLawOptions opts;
      opts.replicates = common.reps(100000);
      opts.master_seed = common.seed + 1;
      opts.threads = common.threads;
      ScaledSquaredLaw law =
          trapezoidal_law(0.5, static_cast<double>(n), r, 1, opts);
      std::vector<double> qs;
      for (double p : kDefaultLevels) qs.push_back(law.quantile(p));
      table_quantile_rows(out, 4, n, r, "squared-limit", qs, {});
    }
    if (r == 1) {
      auto tail = std::make_shared<EmpiricalSpacingTail>(
          n, r, common.reps(200000), common.seed + 2, common.threads);
      CdfEstimate est =
          empirical_integral_estimate(tri, static_cast<double>(n), r, tail, true);
      std::vector<double> qs;
      for (double p : kDefaultLevels)
        qs.push_back(quantile(est, p));
      table_quantile_rows(out, 4, n, r, "empirical-integral", qs, {});
    } else {
      // The integral law degenerates for vanishing densities at higher r;
      // emitted as explicit not-applicable markers.
      for (double p : kDefaultLevels)
        out.add({4, p, static_cast<long long>(n), r, "empirical-integral", "-",
                 json{}});
    }
  }
}

void run_table_5(Output& out, const Common& common) {
  struct Group {
    const char* name;
    std::optional<DensityModel> model;
  };
  std::vector<Group> groups;
  groups.push_back({"uniform", std::nullopt});
  groups.push_back(
      {"truncated-normal(1/2,1)",
       DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0)});
  groups.push_back(
      {"truncated-normal(1/2,1/4)",
       DensityModel::truncated_normal(0.5, 0.25, 0.0, 1.0)});

  PlanOptions opts;
  opts.seed = common.seed;
  opts.threads = common.threads;

  for (const auto& g : groups) {
    for (int len = 0; len < 4; ++len) {
      for (int r : {1, 2, 5, 10, 50}) {
        CoveragePlan plan;
        plan.read.genome_length = 3.2e9;
        plan.read.overlap = 50.0;
        if (len == 3) {
          plan.read.length_mean = 300.0;
          plan.read.length_sd = 50.0;
        } else {
          plan.read.length_mean = 100.0 * (len + 1);
        }
        plan.r = r;
        plan.target_prob = 0.95;
        if (g.model) plan.location = *g.model;
        RequiredReads rr = required_reads(plan, opts);
        out.add({g.name,
                 len == 3 ? json("random(300,50)") : json(plan.read.length_mean),
                 r, plan_method_name(rr.method),
                 static_cast<long long>(rr.n_min), rr.fold_raw,
                 static_cast<long long>(rr.fold)});
      }
    }
  }
}

int run_tables(const TablesArgs& a) {
  Output out;
  out.as_json = a.common.output == "json";
  switch (a.id) {
    case 1:
      out.cols = {"table", "level", "n", "r", "method", "value", "stderr"};
      run_table_uniform(out, 1, 10000, a.common);
      break;
    case 2:
      out.cols = {"table", "level", "n", "r", "method", "value", "stderr"};
      run_table_uniform(out, 2, 100000, a.common);
      break;
    case 3:
      out.cols = {"table", "level", "n", "r", "method", "value", "stderr"};
      run_table_3(out, a.common);
      break;
    case 4:
      out.cols = {"table", "level", "n", "r", "method", "value", "stderr"};
      run_table_4(out, a.common);
      break;
    case 5:
      out.cols = {"distribution", "L", "r", "method", "n_min", "fold_raw",
                  "fold"};
      run_table_5(out, a.common);
      break;
    default:
      throw std::invalid_argument("tables: --id must be 1..5");
  }
  out.print();
  return 0;
}

// -------------------------------------------------------------- check ----

struct CheckArgs {
  Common common;
};

int run_check(const CheckArgs& a) {
  const long R = a.common.reps(20000);
  if (R < 1000)
    std::cerr << "warning: low replicates (" << R
              << "); stochastic checks lose power\n";
  int failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    if (ok) {
      std::cout << "[ok]   " << name << "\n";
    } else {
      std::cout << "[FAIL] " << name << ": " << detail << "\n";
      ++failures;
    }
  };

  // Positive association of overlapping gamma windows.
  for (auto [r, n, x] : {std::tuple<int, long, double>{2, 5, 2.0},
                         {3, 10, 3.0},
                         {5, 8, 6.0}}) {
    auto c = check_association_inequality(n, r, x, R, a.common.seed,
                                          a.common.threads);
    std::ostringstream d;
    d << "lhs=" << c.lhs << " rhs=" << c.rhs << " stderr=" << c.stderr_lhs;
    std::string name = "association r=" + std::to_string(r) +
                       " n=" + std::to_string(n);
    report(name.c_str(), c.pass, d.str());
  }

  // Gumbel limit law at ln 2 against the infinite product over 1 - 2^-j.
  {
    LimitLawSpec spec;
    spec.replicates = std::max<long>(R, 10000);
    spec.truncation = 2000;
    spec.master_seed = a.common.seed;
    LimitLawEstimate est(spec, a.common.threads);
    double target = 0.2887880950866;
    double got = est.cdf(std::log(2.0));
    double tol = 4.0 * est.stderr_at(std::log(2.0));
    std::ostringstream d;
    d << "got " << got << " want " << target << " +- " << tol;
    report("limit-law product identity", std::fabs(got - target) <= tol,
           d.str());
  }

  // Simulated max spacings against the exact distribution, n = 10.
  {
    SimulationSpec spec;
    spec.query = {10, 1, 1};
    spec.replicates = R;
    spec.master_seed = a.common.seed;
    auto s = simulate_kth_max_rspacing(spec, a.common.threads);
    double ks = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
      double F = exact_max_spacing_cdf_r1(10, s[i]);
      ks = std::max({ks, std::fabs(F - static_cast<double>(i) / s.size()),
                     std::fabs(F - static_cast<double>(i + 1) / s.size())});
    }
    double crit = 1.63 / std::sqrt(static_cast<double>(R));
    std::ostringstream d;
    d << "KS=" << ks << " crit=" << crit;
    report("simulation vs exact law", ks < crit, d.str());
  }

  // The gamma approximation coincides with the classic Gumbel form at r=1.
  {
    bool ok = true;
    std::string detail;
    for (double x : {7.0, 9.0, 11.0, 14.0}) {
      double g1 = cdf_gamma_approx(1e4, 1, x);
      double g2 = cdf_gumbel_classic(1e4, 1, x);
      if (std::fabs(g1 - g2) > 1e-12) {
        ok = false;
        detail = "diverge at x=" + std::to_string(x);
        break;
      }
    }
    report("gamma/gumbel r=1 identity", ok, detail);
  }

  // Corrected shift solves the same equation as the quantile inversion.
  {
    bool ok = true;
    std::string detail;
    for (auto [n, r, p] : {std::tuple<double, int, double>{3000, 2, 0.5},
                           {20000, 4, 0.9},
                           {100000, 7, 0.25}}) {
      double xp = -std::log(-std::log(p));
      double via_shift = (solve_corrected_shift(n, r, xp) + xp) / n;
      CdfEstimate est = make_gamma_estimate(static_cast<long>(n), r);
      double via_cdf = quantile(est, p);
      if (std::fabs(via_shift - via_cdf) > 1e-9 * via_cdf) {
        ok = false;
        detail = "n=" + std::to_string(n) + " r=" + std::to_string(r);
        break;
      }
    }
    report("corrected-shift equivalence", ok, detail);
  }

  // Step mixture against the same law computed through the integral.
  {
    auto sm = DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0});
    bool ok = true;
    std::string detail;
    for (double x : {8.0, 12.0, 16.0}) {
      double m1 = cdf_step_mixture(sm, 2000.0, 2, x);
      double m2 = cdf_density_integral(sm, 2000.0, 2, x);
      if (std::fabs(m1 - m2) > 1e-8) {
        ok = false;
        detail = "x=" + std::to_string(x);
        break;
      }
    }
    report("mixture/integral consistency", ok, detail);
  }

  // Coverage probability must grow with the read count.
  {
    CoveragePlan plan;
    plan.read = {3.2e9, 50.0, 200.0, 0.0};
    bool ok = true;
    double prev = -1.0;
    for (long long n = 250000000; n <= 2000000000; n *= 2) {
      double p = coverage_probability(plan, n);
      if (p < prev) ok = false;
      prev = p;
    }
    report("coverage monotone in n", ok, "");
  }

  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-th maximal r-spacing distributions and coverage planning"};
  app.require_subcommand(1);

  CdfArgs cdf_args;
  auto* cdf_cmd = app.add_subcommand(
      "cdf", "evaluate P(n M <= x) for the maximal r-spacing");
  cdf_cmd->add_option("--n", cdf_args.n, "sample size")->required();
  cdf_cmd->add_option("--r", cdf_args.r, "spacing order");
  cdf_cmd->add_option("--k", cdf_args.k, "rank of the maximum");
  cdf_cmd->add_option("--x", cdf_args.x, "scaled threshold x = n s");
  cdf_cmd->add_option("--s", cdf_args.s, "raw threshold s");
  cdf_cmd->add_option("--grid", cdf_args.grid, "scaled grid lo:hi:count");
  cdf_cmd->add_option("--method", cdf_args.method,
                      "exact|gamma|gumbel|mixture|step-limit|integral|"
                      "empirical-integral|simulation|auto");
  cdf_cmd->add_option("--density", cdf_args.density,
                      "location density (JSON file or inline)");
  cdf_cmd->add_flag("--allow-vanishing", cdf_args.allow_vanishing,
                    "diagnostic: run the integral law on densities that "
                    "vanish at their endpoints");
  cdf_args.common.attach(cdf_cmd);

  QuantileArgs q_args;
  auto* q_cmd = app.add_subcommand("quantile",
                                   "invert a spacing CDF at given levels");
  q_cmd->add_option("--n", q_args.n, "sample size")->required();
  q_cmd->add_option("--r", q_args.r, "spacing order");
  q_cmd->add_option("--k", q_args.k, "rank of the maximum");
  q_cmd->add_option("--p", q_args.levels, "levels (default 5 standard)");
  q_cmd->add_option("--method", q_args.method,
                    "exact|gamma|gumbel|corrected|integral|"
                    "empirical-integral|squared-limit|simulation");
  q_cmd->add_option("--density", q_args.density, "location density");
  q_cmd->add_flag("--allow-vanishing", q_args.allow_vanishing,
                  "diagnostic integral law on vanishing densities");
  q_cmd->add_flag("--include-boundary", q_args.include_boundary,
                  "squared-limit: include the boundary term");
  q_args.common.attach(q_cmd);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo quantiles of the k-th maximal r-spacing");
  sim_cmd->add_option("--n", sim_args.n, "sample size")->required();
  sim_cmd->add_option("--r", sim_args.r, "spacing order");
  sim_cmd->add_option("--k", sim_args.k, "rank of the maximum");
  sim_cmd->add_option("--density", sim_args.density, "location density");
  sim_cmd->add_option("--boundary", sim_args.boundary,
                      "with-ends|interior");
  sim_cmd->add_option("--p", sim_args.levels, "levels (default 5 standard)");
  sim_args.common.attach(sim_cmd);

  LimitArgs lim_args;
  auto* lim_cmd = app.add_subcommand(
      "limit-law", "sample a limiting point-process law");
  lim_cmd->add_option("--family", lim_args.family, "gumbel|frechet|weibull");
  lim_cmd->add_option("--a", lim_args.a, "tail index");
  lim_cmd->add_option("--r", lim_args.r, "spacing order");
  lim_cmd->add_option("--k", lim_args.k, "rank of the maximum");
  lim_cmd->add_option("--truncation", lim_args.truncation,
                      "terms per replicate (0 = auto)");
  lim_cmd->add_flag("--include-boundary", lim_args.include_boundary,
                    "weibull: include the boundary term");
  lim_cmd->add_option("--x", lim_args.xs, "CDF evaluation points");
  lim_cmd->add_option("--p", lim_args.levels, "quantile levels");
  lim_args.common.attach(lim_cmd);

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand(
      "plan", "reads needed for r-fold coverage at a target probability");
  plan_cmd->add_option("--config", plan_args.config, "plan JSON file");
  plan_cmd->add_option("--genome", plan_args.genome, "genome length (bp)");
  plan_cmd->add_option("--overlap", plan_args.overlap,
                       "required assembly overlap (bp)");
  plan_cmd->add_option("--read-length", plan_args.length,
                       "read length, or mean when --read-sd > 0");
  plan_cmd->add_option("--read-sd", plan_args.sd, "read length sd (0 = fixed)");
  plan_cmd->add_option("--r", plan_args.r, "coverage fold target");
  plan_cmd->add_option("--k", plan_args.k,
                       "with --reads: rank of the uncovered-region count");
  plan_cmd->add_option("--target", plan_args.target, "target probability");
  plan_cmd->add_option("--density", plan_args.density, "location density");
  plan_cmd->add_option("--method", plan_args.method,
                       "auto|exact|gamma|integral|symmetric-limit|simulation");
  plan_cmd->add_option("--reads", plan_args.reads,
                       "evaluate coverage probability at this read count "
                       "instead of solving");
  plan_args.common.attach(plan_cmd);

  TablesArgs tab_args;
  auto* tab_cmd = app.add_subcommand("tables", "reference tables");
  tab_cmd->add_option("--id", tab_args.id, "table number 1..5")->required();
  tab_args.common.attach(tab_cmd);

  CheckArgs check_args;
  auto* check_cmd =
      app.add_subcommand("check", "run the invariant self-check suite");
  check_args.common.attach(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    // Every stochastic path seeds from here; echoed so runs can be replayed.
    std::cerr << "seed: "
              << (cdf_cmd->parsed()    ? cdf_args.common.seed
                  : q_cmd->parsed()    ? q_args.common.seed
                  : sim_cmd->parsed()  ? sim_args.common.seed
                  : lim_cmd->parsed()  ? lim_args.common.seed
                  : plan_cmd->parsed() ? plan_args.common.seed
                  : tab_cmd->parsed()  ? tab_args.common.seed
                                       : check_args.common.seed)
              << "\n";
    if (cdf_cmd->parsed()) return run_cdf(cdf_args);
    if (q_cmd->parsed()) return run_quantile(q_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (lim_cmd->parsed()) return run_limit_law(lim_args);
    if (plan_cmd->parsed()) return run_plan(plan_args);
    if (tab_cmd->parsed()) return run_tables(tab_args);
    if (check_cmd->parsed()) return run_check(check_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
