#include "catamp/errors.hpp"
#include "catamp/scheme.hpp"
#include "catamp/serialize.hpp"
#include "catamp/states.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace catamp;

namespace {

SchemeConfig large() {
  SchemeConfig c;
  c.xi1 = c.xi2 = 0.68;
  c.r2_1 = 0.11;
  c.r2_2 = 0.01;
  c.r2_3 = 0.505;
  return c;
}

}  // namespace

TEST_CASE("config validation names the field") {
  SchemeConfig c;
  c.r2_3 = 1.5;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("scheme.r2_3") != std::string::npos);
  }
  c = SchemeConfig{};
  c.eta2 = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SchemeConfig{};
  c.loss1 = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("single stage kittens") {
  const SchemeResult a = run_single_stage(0.346, 0, 1, 0.05);
  const SchemeResult b = run_single_stage(0.346, 0, 1, 0.15);
  CHECK(a.output_fit.parity == Parity::odd);
  REQUIRE(a.output_fit.beta_max);
  REQUIRE(b.output_fit.beta_max);
  CHECK(*a.output_fit.beta_max > *b.output_fit.beta_max);
  CHECK(*b.output_fit.beta_max > 1.0);
  CHECK(*a.output_fit.beta_max < 1.2);

  const SchemeResult even = run_single_stage(0.346, 0, 2, 0.1);
  CHECK(even.output_fit.parity == Parity::even);
  for (int n = 1; n < even.output.dim(); n += 2) CHECK(even.output(n, n).real() == 0.0);

  const SchemeResult sub = run_single_stage(0.346, 0, 1, 0.01);
  const SchemeResult add = run_single_stage(0.346, 1, 0, 0.01);
  CHECK(*sub.output_fit.beta_max == doctest::Approx(*add.output_fit.beta_max).epsilon(0.05));
}

TEST_CASE("vacuum inputs give vacuum") {
  SchemeConfig c;
  c.xi1 = c.xi2 = 0.0;
  c.k1 = c.k2 = c.k = 0;
  const SchemeResult r = run_amplifier_ideal(c);
  CHECK(r.output(0, 0).real() == doctest::Approx(1.0));
  CHECK(r.overall_product == doctest::Approx(1.0));
  c.k = 1;
  CHECK_THROWS_AS(run_amplifier_ideal(c), ZeroHeraldError);
}

TEST_CASE("output parity rule on the ideal path") {
  testing::QuietWarnings quiet;
  const std::vector<std::array<int, 5>> cases{{0, 1, 0, 1, 1}, {0, 1, 0, 1, 2}, {1, 0, 0, 1, 1}, {0, 2, 0, 1, 0}};
  for (const auto& [l1, k1, l2, k2, k] : cases) {
    SchemeConfig c;
    c.l1 = l1;
    c.k1 = k1;
    c.l2 = l2;
    c.k2 = k2;
    c.k = k;
    const PureHerald out = amplifier_state(c);
    const int wrong = c.output_parity() == Parity::odd ? 0 : 1;
    for (int n = wrong; n < out.state.dim(); n += 2) CHECK(out.state[n] == Complex(0.0));
  }
}

TEST_CASE("mixed pipeline reduces to the pure one") {
  testing::QuietWarnings quiet;
  const SchemeConfig c = large();
  const SchemeResult pure = run_amplifier_ideal(c);
  const SchemeResult mixed = run_amplifier_imperfect(c);
  CHECK((pure.output.mat() - mixed.output.mat()).norm() < 1e-10);
  CHECK(std::abs(pure.output_fit.f_star - mixed.output_fit.f_star) < 1e-9);
  for (std::size_t i = 0; i < pure.stages.size(); ++i) {
    CHECK(pure.stages[i].probability == doctest::Approx(mixed.stages[i].probability).epsilon(1e-10));
  }
}

TEST_CASE("arm swap with R3^2 -> 1 - R3^2 leaves probabilities unchanged") {
  testing::QuietWarnings quiet;
  SchemeConfig c = large();
  c.xi2 = 0.5;
  SchemeConfig s = c;
  std::swap(s.xi1, s.xi2);
  std::swap(s.r2_1, s.r2_2);
  s.r2_3 = 1.0 - c.r2_3;
  const PureHerald a = amplifier_state(c);
  const PureHerald b = amplifier_state(s);
  CHECK(a.probability == doctest::Approx(b.probability).epsilon(1e-10));
  CHECK(std::abs(std::abs(a.state.inner(b.state)) - 1.0) < 1e-10);
}

TEST_CASE("imperfections") {
  testing::QuietWarnings quiet;
  SchemeConfig c = large();
  c.loss1 = c.loss2 = 0.01;
  c.eta1 = c.eta2 = 0.95;
  const SchemeResult perfect = run_amplifier(c);
  c.eta3 = 0.95;
  const SchemeResult imperfect = run_amplifier(c);
  CHECK_NOTHROW(perfect.output.check_physical());
  CHECK_NOTHROW(imperfect.output.check_physical());
  CHECK(perfect.output.trace() == doctest::Approx(1.0).epsilon(1e-10));
  const auto pp = photon_distribution(perfect.output);
  const auto pi = photon_distribution(imperfect.output);
  double even_p = 0.0;
  double even_i = 0.0;
  for (std::size_t n = 0; n < pp.size(); n += 2) {
    even_p += pp[n];
    even_i += pi[n];
  }
  CHECK(even_i > even_p);
  CHECK(imperfect.output_fit.f_star < perfect.output_fit.f_star);
  CHECK(perfect.kitten_fits[0].f_star < run_amplifier(large()).kitten_fits[0].f_star);
}

TEST_CASE("xi sweep") {
  SchemeConfig c;
  std::vector<double> xis;
  for (double x = 0.2; x <= 0.6; x += 0.05) xis.push_back(x);
  xis.push_back(0.346);
  const auto serial = sweep_xi(c, xis, 1);
  const auto parallel = sweep_xi(c, xis, 4);
  REQUIRE(serial.size() == xis.size());
  for (std::size_t i = 0; i < xis.size(); ++i) {
    CHECK(serial[i].fit.beta_star == parallel[i].fit.beta_star);
    CHECK(serial[i].probability == parallel[i].probability);
  }
  for (std::size_t i = 1; i + 1 < xis.size(); ++i) CHECK(serial[i].fit.beta_star >= serial[i - 1].fit.beta_star);
  const SchemeResult direct = run_amplifier(c);
  CHECK(serial.back().fit.beta_star == direct.output_fit.beta_star);
  CHECK(serial.back().probability == direct.final_stage);

  const auto tiny = sweep_xi(c, {1e-2, 1e-3, 1e-4, 2e-6}, 1);
  for (std::size_t i = 1; i < tiny.size(); ++i) CHECK(tiny[i].fit.beta_star < tiny[i - 1].fit.beta_star);
  CHECK(!tiny[2].fit.degenerate);
  CHECK(tiny.back().fit.degenerate);
}

TEST_CASE("config JSON round trip") {
  SchemeConfig c = large();
  c.eta3 = 0.9;
  c.loss2 = 0.02;
  c.policy.n_max = 50;
  CHECK(scheme_config_from_json(to_json(c)) == c);
  Json j = to_json(c);
  j.erase("r2_2");
  CHECK_THROWS_AS(scheme_config_from_json(j), ConfigError);
}

TEST_CASE("results serialize deterministically") {
  testing::QuietWarnings quiet;
  const Json a = to_json(run_amplifier(large()));
  const Json b = to_json(run_amplifier(large()));
  CHECK(a.dump() == b.dump());
  CHECK(a["schema_version"] == kSchemaVersion);
  CHECK(a["stages"].size() == 3);
  const SchemeConfig replay = scheme_config_from_json(a["config"]);
  CHECK(to_json(run_amplifier(replay)).dump() == a.dump());
}
