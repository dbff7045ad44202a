#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "spacings/density.hpp"
#include "spacings/quadrature.hpp"

using namespace spacings;

namespace {

void check_mass_and_roundtrip(const DensityModel& m) {
  double mass = integrate([&m](double x) { return m.pdf(x); }, m.support_lo(),
                          m.support_hi(), {}, m.breakpoints());
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  for (double p = 0.02; p < 1.0; p += 0.07) {
    double x = m.quantile(p);
    CHECK(m.cdf(x) == doctest::Approx(p).epsilon(1e-9));
    CHECK(x >= m.support_lo());
    CHECK(x <= m.support_hi());
  }
}

}  // namespace

TEST_CASE("uniform density basics") {
  auto u = DensityModel::uniform(0.0, 1.0);
  CHECK(u.pdf(0.3) == doctest::Approx(1.0));
  CHECK(u.cdf(0.3) == doctest::Approx(0.3));
  CHECK(u.quantile(0.3) == doctest::Approx(0.3));
  CHECK(u.p_min() == doctest::Approx(1.0));
  CHECK(u.symmetric());
  check_mass_and_roundtrip(u);

  auto v = DensityModel::uniform(2.0, 6.0);
  CHECK(v.pdf(3.0) == doctest::Approx(0.25));
  CHECK(v.quantile(0.5) == doctest::Approx(4.0));
  check_mass_and_roundtrip(v);
  CHECK_THROWS_AS(DensityModel::uniform(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("step density pdf cdf quantile") {
  auto s = DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0});
  CHECK(s.pdf(0.1) == doctest::Approx(2.0));
  CHECK(s.pdf(0.6) == doctest::Approx(2.0 / 3.0));
  CHECK(s.cdf(0.25) == doctest::Approx(0.5));
  CHECK(s.cdf(0.625) == doctest::Approx(0.75));
  CHECK(s.quantile(0.5) == doctest::Approx(0.25));
  CHECK(s.p_min() == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(s.symmetric());
  check_mass_and_roundtrip(s);

  // A single unit-height piece is the uniform density in disguise.
  auto one = DensityModel::step({0.0, 1.0}, {1.0});
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(one.pdf(x) == doctest::Approx(1.0));
    CHECK(one.cdf(x) == doctest::Approx(x));
  }

  // Mass must equal one.
  CHECK_THROWS_AS(DensityModel::step({0.0, 1.0}, {1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityModel::step({0.0, 0.5, 0.4}, {1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityModel::step({0.0, 0.5, 1.0}, {2.0, -0.1}),
                  std::invalid_argument);
}

TEST_CASE("step partition carries masses and occupancies") {
  auto s = DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0});
  auto part = step_partition(s, 1000.0);
  REQUIRE(part.thetas.size() == 2);
  CHECK(part.thetas[0] == doctest::Approx(0.5));
  CHECK(part.thetas[1] == doctest::Approx(0.5));
  CHECK(part.heights[0] == doctest::Approx(2.0));
  CHECK(part.k_i[0] == 500);
  CHECK(part.k_i[1] == 500);
}

TEST_CASE("truncated normal matches frozen constants") {
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  // Normalizing mass Phi(1/2) - Phi(-1/2) and pdf values at the ends and
  // center, all from 40-digit evaluation.
  CHECK(tn.pdf(0.5) == doctest::Approx(1.041828977197).epsilon(1e-12));
  CHECK(tn.pdf(0.0) == doctest::Approx(0.9194108453992).epsilon(1e-12));
  CHECK(tn.pdf(1.0) == doctest::Approx(0.9194108453992).epsilon(1e-12));
  CHECK(tn.p_min() == doctest::Approx(0.9194108453992).epsilon(1e-12));
  CHECK(tn.symmetric());
  check_mass_and_roundtrip(tn);

  auto sharp = DensityModel::truncated_normal(0.5, 0.25, 0.0, 1.0);
  CHECK(sharp.pdf(0.0) == doctest::Approx(0.2262586964501).epsilon(1e-12));
  CHECK(sharp.pdf(0.5) == doctest::Approx(1.671838200941).epsilon(1e-12));
  check_mass_and_roundtrip(sharp);

  CHECK_THROWS_AS(DensityModel::truncated_normal(0.5, 0.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityModel::truncated_normal(0.5, 1.0, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("truncated normal warm quantile equals the cold one") {
  auto tn = DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0);
  double guess = 0.0;
  for (double p = 1e-6; p < 1.0; p = p * 1.6 + 1e-4) {
    double warm = tn.quantile_warm(p, guess);
    CHECK(warm == doctest::Approx(tn.quantile(p)).epsilon(1e-10));
    guess = warm;
  }
  // A near-tie of consecutive levels must not break monotonicity by more
  // than an ulp (the simulation clamps the rest).
  double a = tn.quantile_warm(0.5, 0.3);
  double b = tn.quantile_warm(0.5 + 1e-16, a);
  CHECK(b >= a - 1e-15);
}

TEST_CASE("trapezoidal density shapes") {
  auto tri = DensityModel::trapezoidal(0.5);
  CHECK(tri.pdf(0.5) == doctest::Approx(2.0));
  CHECK(tri.pdf(0.0) == doctest::Approx(0.0));
  CHECK(tri.pdf(0.25) == doctest::Approx(1.0));
  CHECK(tri.cdf(0.5) == doctest::Approx(0.5));
  CHECK(tri.symmetric());
  CHECK(tri.p_min() == doctest::Approx(0.0));
  check_mass_and_roundtrip(tri);

  auto trap = DensityModel::trapezoidal(0.25);
  CHECK(trap.pdf(0.5) == doctest::Approx(1.0 / 0.75));
  // Halfway up the ramp: x / (kappa (1-kappa)).
  CHECK(trap.pdf(0.125) == doctest::Approx(0.125 / (0.25 * 0.75)).epsilon(1e-12));
  check_mass_and_roundtrip(trap);

  // kappa = 0 is the uniform density.
  auto flat = DensityModel::trapezoidal(0.0);
  CHECK(flat.pdf(0.3) == doctest::Approx(1.0));
  CHECK(flat.p_min() == doctest::Approx(1.0));

  CHECK_THROWS_AS(DensityModel::trapezoidal(0.6), std::invalid_argument);
  CHECK_THROWS_AS(DensityModel::trapezoidal(-0.1), std::invalid_argument);
}

TEST_CASE("extremal classification") {
  CHECK(DensityModel::uniform(0.0, 1.0).classify().family ==
        ExtremalFamily::Weibull);
  CHECK(DensityModel::uniform(0.0, 1.0).classify().index ==
        doctest::Approx(1.0));
  // Positive density at the endpoint keeps index 1.
  CHECK(DensityModel::truncated_normal(0.5, 1.0, 0.0, 1.0).classify().index ==
        doctest::Approx(1.0));
  // Linearly vanishing density doubles the index.
  auto tri = DensityModel::trapezoidal(0.5).classify();
  CHECK(tri.family == ExtremalFamily::Weibull);
  CHECK(tri.index == doctest::Approx(2.0));
  auto trap = DensityModel::trapezoidal(0.3).classify();
  CHECK(trap.index == doctest::Approx(2.0));
}

TEST_CASE("norming constants for the uniform density") {
  auto u = DensityModel::uniform(0.0, 1.0);
  auto nc = u.norming(100.0);
  CHECK(nc.B == doctest::Approx(1.0));
  CHECK(nc.b_n == doctest::Approx(0.99));
  CHECK(nc.a_n == doctest::Approx(0.01 * (1.0 - std::exp(-1.0))));
}

TEST_CASE("json round trip preserves every kind") {
  for (const DensityModel& m :
       {DensityModel::uniform(-1.0, 3.0),
        DensityModel::step({0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0}),
        DensityModel::truncated_normal(0.5, 0.25, 0.0, 1.0),
        DensityModel::trapezoidal(0.35)}) {
    DensityModel back = DensityModel::from_json_text(m.to_json_text());
    CHECK(back.kind() == m.kind());
    for (double p = 0.05; p < 1.0; p += 0.1)
      CHECK(back.quantile(p) == doctest::Approx(m.quantile(p)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(DensityModel::from_json_text("{\"kind\":\"sombrero\"}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityModel::from_json_text("not json"),
                  std::invalid_argument);
}

TEST_CASE("normal helpers agree with erfc") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  CHECK(normal_pdf(0.0) == doctest::Approx(0.398942280401433).epsilon(1e-12));
  CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-9));
}
