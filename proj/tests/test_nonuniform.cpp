#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "spacings/density.hpp"
#include "spacings/gamma_tail.hpp"
#include "spacings/gumbel.hpp"
#include "spacings/nonuniform.hpp"
#include "spacings/types.hpp"

using namespace spacings;

namespace {

// Raw-axis estimate over the analytic density-integral law, so the generic
// quantile inversion applies.
CdfEstimate integral_estimate(const DensityModel& model, double n, int r,
                              DensityIntegralOptions opts = {}) {
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

}  // namespace

TEST_CASE("single piece step mixture is the gamma approximation") {
  auto flat = DensityModel::step({0.0, 1.0}, {1.0});
  for (double n : {500.0, 1e4}) {
    for (int r : {1, 4}) {
      for (double x = 4.0; x < 24.0; x += 1.7) {
        CHECK(cdf_step_mixture(flat, n, r, x) ==
              doctest::Approx(cdf_gamma_approx(n, r, x)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("two piece mixture matches the literal formula") {
  auto s = DensityModel::step({0.0, 0.5, 1.0}, {2.0 / 3.0, 4.0 / 3.0});
  double n = 3000.0;
  for (int r : {1, 3}) {
    for (double x : {6.0, 10.0, 15.0}) {
      // Piece masses are height * width: 1/3 on the left, 2/3 on the right.
      double want = std::exp(-n * ((1.0 / 3.0) * gamma_tail(r, 2.0 / 3.0 * x) +
                                   (2.0 / 3.0) * gamma_tail(r, 4.0 / 3.0 * x)));
      CHECK(cdf_step_mixture(s, n, r, x) ==
            doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("density integral reproduces the step mixture") {
  auto s = DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0});
  for (double x : {8.0, 12.0, 18.0}) {
    CHECK(cdf_density_integral(s, 2000.0, 2, x) ==
          doctest::Approx(cdf_step_mixture(s, 2000.0, 2, x)).epsilon(1e-8));
  }
}

TEST_CASE("density integral on a stretched uniform rescales the argument") {
  auto wide = DensityModel::uniform(0.0, 2.0);
  for (double x : {10.0, 16.0, 22.0}) {
    CHECK(cdf_density_integral(wide, 5000.0, 2, x) ==
          doctest::Approx(cdf_gamma_approx(5000.0, 2, 0.5 * x)).epsilon(1e-10));
  }
}

TEST_CASE("exponential kernel form agrees with the integral at r = 1") {
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  for (double x : {7.0, 9.5, 12.0}) {
    CHECK(cdf_barbe_r1(tn, 1e4, x) ==
          doctest::Approx(cdf_density_integral(tn, 1e4, 1, x)).epsilon(1e-10));
  }
}

TEST_CASE("integral law refuses vanishing densities unless overridden") {
  auto tri = DensityModel::trapezoidal(0.5);
  CHECK_THROWS_AS(cdf_density_integral(tri, 1e4, 1, 10.0),
                  std::domain_error);
  DensityIntegralOptions opts;
  opts.allow_vanishing_density = true;
  double v = cdf_density_integral(tri, 1e4, 1, 85.0, opts);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
}

TEST_CASE("truncated normal integral quantiles match frozen references") {
  // 40-digit quadrature of exp(-n int f_r(s p(u)) p(u) du), n = 1e4.
  const double probs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};
  const double r1[5] = {0.81485636e-3, 0.89276062e-3, 0.96291874e-3,
                        1.0520372e-3, 1.2271398e-3};
  const double r5[5] = {1.6501236e-3, 1.7511997e-3, 1.8410128e-3,
                        1.9536644e-3, 2.1711114e-3};
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  CdfEstimate e1 = integral_estimate(tn, 1e4, 1);
  CdfEstimate e5 = integral_estimate(tn, 1e4, 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(quantile(e1, probs[i]) == doctest::Approx(r1[i]).epsilon(1e-6));
    CHECK(quantile(e5, probs[i]) == doctest::Approx(r5[i]).epsilon(1e-6));
  }
}

TEST_CASE("triangle integral quantiles match frozen references at r = 1") {
  // Vanishing-endpoint density run under the diagnostic override.
  const double probs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};
  const double q[5] = {0.40853898e-2, 0.6005612e-2, 0.8493218e-2,
                       1.3183436e-2, 3.1221568e-2};
  auto tri = DensityModel::trapezoidal(0.5);
  DensityIntegralOptions opts;
  opts.allow_vanishing_density = true;
  opts.quad.order = 64;
  opts.quad.panels = 128;
  CdfEstimate est = integral_estimate(tri, 1e4, 1, opts);
  for (int i = 0; i < 5; ++i)
    CHECK(quantile(est, probs[i]) == doctest::Approx(q[i]).epsilon(1e-5));
}

TEST_CASE("empirical tail tracks the analytic tail where sampled") {
  EmpiricalSpacingTail tail(2000, 1, 4000, 9001);
  // In the well-resolved band the simulated tail sits close to f_1; the
  // agreement is statistical, not exact.
  for (double y : {7.0, 8.0, 9.5}) {
    double rel = std::fabs(tail(y) - gamma_tail(1, y)) / gamma_tail(1, y);
    CHECK(rel < 0.25);
  }
  // Below the sampled range the analytic continuation takes over exactly.
  CHECK(tail(0.5) == gamma_tail(1, 0.5));
  CHECK(tail(2.0) == gamma_tail(1, 2.0));
  CHECK_THROWS_AS(EmpiricalSpacingTail(2000, 1, 50, 1), std::invalid_argument);
}

TEST_CASE("empirical integral approaches the analytic integral") {
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  EmpiricalSpacingTail tail(2000, 1, 20000, 77);
  DensityIntegralOptions opts;
  opts.quad.order = 16;
  opts.quad.panels = 256;
  // Mid-range arguments: deeper in the tail the ECDF noise is amplified by
  // the log, so relative agreement degrades.
  for (double x : {8.5, 9.5, 10.5}) {
    double emp = cdf_density_integral(tn, 2000.0, tail, x, opts);
    double ana = cdf_density_integral(tn, 2000.0, 1, x);
    CHECK(emp == doctest::Approx(ana).epsilon(0.05));
  }
}

TEST_CASE("step gumbel limit reduces to the classic law for one piece") {
  auto flat = DensityModel::step({0.0, 1.0}, {1.0});
  for (double x : {8.0, 10.0, 12.0}) {
    CHECK(cdf_step_gumbel_limit(flat, 1e4, 1, x) ==
          doctest::Approx(cdf_gumbel_classic(1e4, 1, x)).epsilon(1e-12));
  }
}

TEST_CASE("step gumbel limit converges to the mixture as n grows") {
  auto s = DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0});
  // Evaluate both laws at the limit law's own median; the gap must shrink
  // (the rate is iterated-log slow, so expect improvement, not agreement).
  double prev_gap = 1.0;
  for (double n : {1e3, 1e5, 1e7}) {
    double lo = 0.0, hi = 1e3;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (cdf_step_gumbel_limit(s, n, 1, mid) < 0.5 ? lo : hi) = mid;
    }
    double gap = std::fabs(cdf_step_mixture(s, n, 1, 0.5 * (lo + hi)) - 0.5);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.07);
}

TEST_CASE("step regime warning flags underpopulated pieces") {
  auto lop = DensityModel::step({0.0, 0.005, 1.0}, {0.4, 0.998 / 0.995});
  // Left piece mass 0.002: at n = 1000 it expects only 2 points.
  CHECK(step_regime_warning(lop, 1000.0));
  CHECK_FALSE(step_regime_warning(lop, 1e6));
  auto even = DensityModel::step({0.0, 0.5, 1.0}, {1.0, 1.0});
  CHECK_FALSE(step_regime_warning(even, 1000.0));
}
