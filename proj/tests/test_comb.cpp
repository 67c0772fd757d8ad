#include <numbers>
#include <random>

#include "catamp/comb.hpp"
#include "catamp/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace catamp;

TEST_CASE("EOM as a tap beam splitter") {
  testing::QuietWarnings quiet;
  CHECK(eom_to_bs({0.0, 0.0}).r2() == 0.0);
  CHECK(eom_to_bs({std::sqrt(0.22), 0.0}).r2() == 0.11);
  double last = -1.0;
  for (double d = 0.0; d <= 1.4; d += 0.05) {
    const double r2 = eom_to_bs({d, 0.0}).r2();
    CHECK(r2 > last);
    CHECK(1.0 - r2 == doctest::Approx(1.0 - d * d / 2.0));
    last = r2;
  }
  CHECK_THROWS_AS(eom_to_bs({1.5, 0.0}), ConfigError);
  CHECK_THROWS_AS(eom_to_bs({-0.1, 0.0}), ConfigError);
}

TEST_CASE("weak modulation warning") {
  long before = warning_count();
  testing::QuietWarnings quiet;
  eom_to_bs({0.05, 0.0});
  CHECK(warning_count() == before);
  eom_to_bs({0.2, 0.0});
  CHECK(warning_count() == before + 1);
}

TEST_CASE("depth inversion is exact for decimal reflectances") {
  testing::QuietWarnings quiet;
  for (double r2 : {0.0, 0.01, 0.05, 0.11, 0.15, 0.49, 0.505, 0.999}) {
    CHECK(eom_to_bs({depth_for_reflectivity(r2), 0.0}).r2() == r2);
  }
}

TEST_CASE("comb to scheme") {
  testing::QuietWarnings quiet;
  CombConfig comb;
  comb.eom1.depth = depth_for_reflectivity(0.11);
  comb.eom2.depth = depth_for_reflectivity(0.01);
  comb.fbs3_reflect = 0.5;
  const SchemeConfig c = comb_to_scheme(comb, 0.68);
  CHECK(c.r2_1 == 0.11);
  CHECK(c.r2_2 == 0.01);
  CHECK(c.r2_3 == 0.5);
  CHECK(c.l1 == 0);
  CHECK(c.l2 == 0);
  CHECK(c.k1 == 1);

  comb.fbs3_reflect = 0.505;
  SchemeConfig direct;
  direct.xi1 = direct.xi2 = 0.68;
  direct.r2_1 = 0.11;
  direct.r2_2 = 0.01;
  direct.r2_3 = 0.505;
  const SchemeConfig mapped = comb_to_scheme(comb, 0.68);
  CHECK(mapped == direct);
  const SchemeResult a = run_amplifier_ideal(mapped);
  const SchemeResult b = run_amplifier_ideal(direct);
  CHECK(a.output.mat() == b.output.mat());
  CHECK(a.output_fit.f_star == b.output_fit.f_star);
  CHECK(a.overall_product == b.overall_product);

  CombConfig bad = comb;
  bad.eom2.theta = 0.0;
  CHECK_THROWS_WITH_AS(comb_to_scheme(bad, 0.68), doctest::Contains("unsupported phase pair"), ConfigError);

  CombConfig off;
  off.fbs3_reflect = 0.5;
  CHECK_THROWS_AS(run_amplifier_ideal(comb_to_scheme(off, 0.68)), ZeroHeraldError);
}

TEST_CASE("sideband basis round trip") {
  const double s = std::numbers::sqrt2;
  const auto [c1, s1] = to_quadrature(1.0, 0.0);
  CHECK(std::abs(c1 - Complex(1.0 / s, 0.0)) < 1e-15);
  CHECK(std::abs(s1 - Complex(0.0, -1.0 / s)) < 1e-15);
  const auto [c2, s2] = to_quadrature(1.0, 1.0);
  CHECK(std::abs(c2 - Complex(s, 0.0)) < 1e-15);
  CHECK(std::abs(s2) < 1e-15);

  std::mt19937 rng(17);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const Complex p(g(rng), g(rng));
    const Complex m(g(rng), g(rng));
    const auto [back_p, back_m] = basis_roundtrip(p, m);
    CHECK(std::abs(back_p - p) < 1e-12);
    CHECK(std::abs(back_m - m) < 1e-12);
    const auto [c, q] = to_quadrature(p, m);
    CHECK(std::abs(std::norm(c) + std::norm(q) - std::norm(p) - std::norm(m)) < 1e-12);
  }
}
