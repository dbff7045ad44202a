#pragma once

#include <functional>
#include <vector>

namespace spacings {

enum class QuadratureRule { GaussLegendreComposite, AdaptiveSimpson };

// Defaults resolve smooth integrands on [0,1] to well below 1e-10; panels
// are shared out across breakpoint segments in proportion to length, with
// at least one panel per segment.
struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::GaussLegendreComposite;
  int order = 32;
  int panels = 64;
  double rel_tol = 1e-8;
  bool breakpoint_splitting = true;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1]. Computed
// once per order and cached; safe to call concurrently.
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {},
                 const std::vector<double>& breakpoints = {});

}  // namespace spacings
