#include "spacings/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "spacings/types.hpp"

namespace spacings {

namespace {

struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev-angle initial guess. Roots are
// symmetric, so only the lower half is solved.
GlRule build_gl(int n) {
  GlRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

std::mutex g_gl_mutex;
std::map<int, GlRule>& gl_cache() {
  static std::map<int, GlRule> cache;
  return cache;
}

const GlRule& gl_rule(int order) {
  check_arg(order >= 2 && order <= 256, "quadrature: order must lie in [2,256]");
  std::lock_guard<std::mutex> lock(g_gl_mutex);
  auto& cache = gl_cache();
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gl(order)).first;
  return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                const GlRule& r) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = simpson(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

}  // namespace

const std::vector<double>& gl_nodes(int order) { return gl_rule(order).nodes; }
const std::vector<double>& gl_weights(int order) {
  return gl_rule(order).weights;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec,
                 const std::vector<double>& breakpoints) {
  check_arg(std::isfinite(a) && std::isfinite(b), "integrate: endpoints must be finite");
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  // Segment endpoints: [a,b] cut at every interior breakpoint.
  std::vector<double> cuts{a, b};
  if (spec.breakpoint_splitting) {
    for (double c : breakpoints)
      if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  if (spec.rule == QuadratureRule::AdaptiveSimpson) {
    double total = 0.0;
    double tol = spec.rel_tol * (b - a);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      total += adaptive_simpson(f, cuts[i], cuts[i + 1],
                                tol * (cuts[i + 1] - cuts[i]) / (b - a));
    return sign * total;
  }

  check_arg(spec.panels >= 1, "integrate: panels must be positive");
  const GlRule& rule = gl_rule(spec.order);

  double total = 0.0;
  size_t nseg = cuts.size() - 1;
  for (size_t i = 0; i < nseg; ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    int np = std::max<int>(
        1, static_cast<int>(std::lround(spec.panels * (hi - lo) / (b - a))));
    double h = (hi - lo) / np;
    for (int p = 0; p < np; ++p)
      total += gl_panel(f, lo + p * h, lo + (p + 1) * h, rule);
  }
  return sign * total;
}

}  // namespace spacings
