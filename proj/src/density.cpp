#include "spacings/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace spacings {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

DensityModel DensityModel::uniform(double A, double B) {
  check_arg(B > A, "uniform density: need A < B");
  DensityModel m;
  m.kind_ = DensityKind::Uniform;
  m.lo_ = A;
  m.hi_ = B;
  m.breakpoints_ = {A, B};
  return m;
}

DensityModel DensityModel::step(std::vector<double> edges,
                                std::vector<double> heights) {
  check_arg(edges.size() >= 2, "step density: need at least two breakpoints");
  check_arg(heights.size() + 1 == edges.size(),
            "step density: need one height per piece");
  for (size_t i = 1; i < edges.size(); ++i)
    check_arg(edges[i] > edges[i - 1], "step density: breakpoints must increase");
  double mass = 0.0;
  for (size_t i = 0; i < heights.size(); ++i) {
    check_arg(heights[i] > 0.0, "step density: heights must be positive");
    mass += heights[i] * (edges[i + 1] - edges[i]);
  }
  check_arg(std::fabs(mass - 1.0) <= 1e-10,
            "step density: total mass must equal 1 within 1e-10");

  DensityModel m;
  m.kind_ = DensityKind::Step;
  m.lo_ = edges.front();
  m.hi_ = edges.back();
  m.breakpoints_ = edges;
  m.edges_ = std::move(edges);
  m.heights_ = std::move(heights);
  m.cum_.assign(m.edges_.size(), 0.0);
  for (size_t i = 0; i < m.heights_.size(); ++i)
    m.cum_[i + 1] = m.cum_[i] + m.heights_[i] * (m.edges_[i + 1] - m.edges_[i]);
  m.cum_.back() = 1.0;
  return m;
}

DensityModel DensityModel::truncated_normal(double mu, double sigma, double a,
                                            double b) {
  check_arg(sigma > 0.0, "truncated normal: sigma must be positive");
  check_arg(b > a, "truncated normal: need a < b");
  DensityModel m;
  m.kind_ = DensityKind::TruncatedNormal;
  m.lo_ = a;
  m.hi_ = b;
  m.mu_ = mu;
  m.sigma_ = sigma;
  m.cdf_lo_ = normal_cdf((a - mu) / sigma);
  m.z_mass_ = normal_cdf((b - mu) / sigma) - m.cdf_lo_;
  check_arg(m.z_mass_ > 0.0, "truncated normal: no mass inside [a,b]");
  m.breakpoints_ = {a, b};
  return m;
}

DensityModel DensityModel::trapezoidal(double kappa) {
  check_arg(kappa >= 0.0 && kappa <= 0.5,
            "trapezoidal density: kappa must lie in [0, 1/2]");
  DensityModel m;
  m.kind_ = DensityKind::Trapezoidal;
  m.lo_ = 0.0;
  m.hi_ = 1.0;
  m.kappa_ = kappa;
  if (kappa == 0.0)
    m.breakpoints_ = {0.0, 1.0};
  else if (kappa == 0.5)
    m.breakpoints_ = {0.0, 0.5, 1.0};
  else
    m.breakpoints_ = {0.0, kappa, 1.0 - kappa, 1.0};
  return m;
}

double DensityModel::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  switch (kind_) {
    case DensityKind::Uniform:
      return 1.0 / (hi_ - lo_);
    case DensityKind::Step: {
      auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
      size_t i = static_cast<size_t>(it - edges_.begin());
      if (i == 0) return heights_.front();
      if (i >= edges_.size()) return heights_.back();
      return heights_[i - 1];
    }
    case DensityKind::TruncatedNormal:
      return normal_pdf((x - mu_) / sigma_) / (sigma_ * z_mass_);
    case DensityKind::Trapezoidal: {
      if (kappa_ == 0.0) return 1.0;
      double c = kappa_ * (1.0 - kappa_);
      if (x < kappa_) return x / c;
      if (x > 1.0 - kappa_) return (1.0 - x) / c;
      return 1.0 / (1.0 - kappa_);
    }
  }
  return 0.0;
}

double DensityModel::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  switch (kind_) {
    case DensityKind::Uniform:
      return (x - lo_) / (hi_ - lo_);
    case DensityKind::Step: {
      auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
      size_t i = static_cast<size_t>(it - edges_.begin());
      if (i == 0) return 0.0;
      if (i >= edges_.size()) return 1.0;
      return cum_[i - 1] + heights_[i - 1] * (x - edges_[i - 1]);
    }
    case DensityKind::TruncatedNormal:
      return (normal_cdf((x - mu_) / sigma_) - cdf_lo_) / z_mass_;
    case DensityKind::Trapezoidal: {
      if (kappa_ == 0.0) return x;
      double c = 2.0 * kappa_ * (1.0 - kappa_);
      if (x < kappa_) return x * x / c;
      if (x > 1.0 - kappa_) return 1.0 - (1.0 - x) * (1.0 - x) / c;
      return (kappa_ * 0.5 + (x - kappa_)) / (1.0 - kappa_);
    }
  }
  return 0.0;
}

double DensityModel::quantile(double p) const {
  check_arg(p >= 0.0 && p <= 1.0, "density quantile: p must lie in [0,1]");
  if (p <= 0.0) return lo_;
  if (p >= 1.0) return hi_;
  switch (kind_) {
    case DensityKind::Uniform:
      return lo_ + p * (hi_ - lo_);
    case DensityKind::Step: {
      auto it = std::upper_bound(cum_.begin(), cum_.end(), p);
      size_t i = static_cast<size_t>(it - cum_.begin());
      if (i == 0) return lo_;
      if (i >= cum_.size()) return hi_;
      return edges_[i - 1] + (p - cum_[i - 1]) / heights_[i - 1];
    }
    case DensityKind::TruncatedNormal: {
      // Bisection on the cdf, no inverse-erf dependency. The support is
      // bounded, so 200 halvings push the interval width below 1e-12
      // of its length for any practical [a,b].
      double lo = lo_, hi = hi_;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
          lo = mid;
        else
          hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) break;
      }
      return 0.5 * (lo + hi);
    }
    case DensityKind::Trapezoidal: {
      if (kappa_ == 0.0) return p;
      double c = 2.0 * kappa_ * (1.0 - kappa_);
      double p_corner = kappa_ / (2.0 * (1.0 - kappa_));
      if (p < p_corner) return std::sqrt(p * c);
      if (p > 1.0 - p_corner) return 1.0 - std::sqrt((1.0 - p) * c);
      return kappa_ + (p * (1.0 - kappa_) - kappa_ * 0.5);
    }
  }
  return lo_;
}

double DensityModel::quantile_warm(double p, double guess) const {
  if (kind_ != DensityKind::TruncatedNormal) return quantile(p);
  if (p <= 0.0) return lo_;
  if (p >= 1.0) return hi_;

  // Newton on cdf(x) - p with a bracket safeguard. Along a sorted sequence
  // the previous point is an excellent start, so two or three steps suffice.
  // Every exit returns a point whose residual or step is at machine floor;
  // in particular the tiny-residual exit returns x itself, never a bisection
  // midpoint manufactured after the step underflowed.
  double lo = lo_, hi = hi_;
  double x = std::min(std::max(guess, lo), hi);
  for (int it = 0; it < 64; ++it) {
    double f = cdf(x) - p;
    if (std::fabs(f) < 4e-16) return x;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    double d = pdf(x);
    double nx = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (nx == x) return x;
    x = nx;
    if (std::fabs(hi - lo) < 1e-15) break;
  }
  return x;
}

double DensityModel::p_min() const {
  switch (kind_) {
    case DensityKind::Uniform:
      return 1.0 / (hi_ - lo_);
    case DensityKind::Step:
      return *std::min_element(heights_.begin(), heights_.end());
    case DensityKind::TruncatedNormal:
      // Unimodal, so the infimum sits at whichever endpoint is further
      // from the mode.
      return std::min(pdf(lo_), pdf(hi_));
    case DensityKind::Trapezoidal:
      return kappa_ == 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

bool DensityModel::symmetric() const {
  switch (kind_) {
    case DensityKind::Uniform:
    case DensityKind::Trapezoidal:
      return true;
    case DensityKind::TruncatedNormal:
      return std::fabs(mu_ - 0.5 * (lo_ + hi_)) <= 1e-12 * (hi_ - lo_);
    case DensityKind::Step: {
      size_t m = heights_.size();
      for (size_t i = 0; i < m; ++i) {
        if (std::fabs(heights_[i] - heights_[m - 1 - i]) > 1e-12) return false;
        double left = edges_[i] - lo_;
        double right = hi_ - edges_[m - i];
        if (std::fabs(left - right) > 1e-12 * (hi_ - lo_)) return false;
      }
      return true;
    }
  }
  return false;
}

ExtremalType DensityModel::classify() const {
  // Bounded support with pdf bounded away from zero gives the a=1 case;
  // a linearly vanishing endpoint density gives a=2.
  switch (kind_) {
    case DensityKind::Uniform:
    case DensityKind::Step:
    case DensityKind::TruncatedNormal:
      return {ExtremalFamily::Weibull, 1.0};
    case DensityKind::Trapezoidal:
      return kappa_ == 0.0 ? ExtremalType{ExtremalFamily::Weibull, 1.0}
                           : ExtremalType{ExtremalFamily::Weibull, 2.0};
  }
  return {ExtremalFamily::Unclassified, 0.0};
}

NormingConstants DensityModel::norming(double n) const {
  check_arg(n >= 2.0, "norming constants: n must be >= 2");
  NormingConstants out;
  out.b_n = quantile(1.0 - 1.0 / n);
  out.a_n = quantile(1.0 - 1.0 / (n * 2.718281828459045235)) - out.b_n;
  out.B = hi_;
  return out;
}

StepApproxPartition step_partition(const DensityModel& step_model, double n) {
  check_arg(step_model.kind() == DensityKind::Step,
            "step_partition: model must be a step density");
  const auto& e = step_model.step_edges();
  const auto& h = step_model.step_heights();
  StepApproxPartition out;
  out.heights = h;
  out.thetas.resize(h.size());
  out.k_i.resize(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    out.thetas[i] = h[i] * (e[i + 1] - e[i]);
    out.k_i[i] = static_cast<long>(std::floor(n * out.thetas[i]));
  }
  return out;
}

DensityModel DensityModel::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("density config: ") + e.what());
  }
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform")
      return uniform(j.value("a", 0.0), j.value("b", 1.0));
    if (kind == "step")
      return step(j.at("breakpoints").get<std::vector<double>>(),
                  j.at("heights").get<std::vector<double>>());
    if (kind == "truncated_normal")
      return truncated_normal(j.at("mu").get<double>(), j.at("sigma").get<double>(),
                              j.value("a", 0.0), j.value("b", 1.0));
    if (kind == "trapezoidal")
      return trapezoidal(j.at("kappa").get<double>());
    throw std::invalid_argument("density config: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("density config: ") + e.what());
  }
}

std::string DensityModel::to_json_text() const {
  nlohmann::json j;
  switch (kind_) {
    case DensityKind::Uniform:
      j = {{"kind", "uniform"}, {"a", lo_}, {"b", hi_}};
      break;
    case DensityKind::Step:
      j = {{"kind", "step"}, {"breakpoints", edges_}, {"heights", heights_}};
      break;
    case DensityKind::TruncatedNormal:
      j = {{"kind", "truncated_normal"}, {"mu", mu_}, {"sigma", sigma_},
           {"a", lo_}, {"b", hi_}};
      break;
    case DensityKind::Trapezoidal:
      j = {{"kind", "trapezoidal"}, {"kappa", kappa_}};
      break;
  }
  return j.dump();
}

}  // namespace spacings
