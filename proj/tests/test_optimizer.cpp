#include "catamp/errors.hpp"
#include "catamp/optimizer.hpp"
#include "catamp/scheme.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace catamp;

TEST_CASE("one grid point and no refinement returns that point") {
  OptProblem p;
  p.free = {{FreeParam::r2_3, 0.2, 0.6}};
  p.grid_points = 1;
  p.max_iterations = 0;
  const OptReport r = optimize(p);
  CHECK(r.best.front() == doctest::Approx(0.4));
  CHECK(r.evaluations == 1);
  CHECK(r.best_objective == evaluate(p, {0.4}));
}

TEST_CASE("identical arms") {
  SchemeConfig c;
  c.r2_1 = c.r2_2 = 0.1;
  c.r2_3 = 0.3;
  const PureHerald ref = amplifier_state(c);
  for (double r : {0.1, 0.45, 0.7, 0.9}) {
    SchemeConfig m = c;
    m.r2_3 = r;
    const PureHerald h = amplifier_state(m);
    CHECK(std::abs(std::abs(h.state.inner(ref.state)) - 1.0) < 1e-10);
    m.r2_3 = 1.0 - r;
    CHECK(amplifier_state(m).probability == doctest::Approx(h.probability).epsilon(1e-10));
  }
  c.r2_3 = 0.5;
  CHECK_THROWS_AS(amplifier_state(c), ZeroHeraldError);

  OptProblem p;
  p.base.r2_1 = p.base.r2_2 = 0.1;
  p.free = {{FreeParam::r2_3, 0.2, 0.8}};
  p.objective = Objective::probability_weighted;
  const OptReport r = optimize(p);
  CHECK(std::abs(r.best.front() - 0.5) == doctest::Approx(0.3));
}

TEST_CASE("optimizer invariants") {
  testing::QuietWarnings quiet;
  OptProblem p;
  p.base.xi1 = p.base.xi2 = 0.68;
  p.free = {{FreeParam::r2_1, 0.05, 0.3}, {FreeParam::r2_2, 0.001, 0.05}, {FreeParam::r2_3, 0.3, 0.7}};
  p.objective = Objective::fidelity_at_beta;
  p.target_beta = 2.51;
  p.grid_points = 5;
  p.workers = 3;
  const OptReport r = optimize(p);
  for (std::size_t i = 0; i < p.free.size(); ++i) {
    CHECK(r.best[i] >= p.free[i].lo);
    CHECK(r.best[i] <= p.free[i].hi);
  }
  CHECK(r.best_objective >= r.grid_objective);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
  CHECK(r.trace.back() == r.best_objective);
  CHECK(static_cast<int>(r.trace.size()) == r.evaluations);
  CHECK(evaluate(p, r.best) == r.best_objective);

  OptProblem serial = p;
  serial.workers = 1;
  const OptReport again = optimize(serial);
  CHECK(again.best == r.best);
  CHECK(again.trace == r.trace);
  CHECK(again.evaluations == r.evaluations);
}

TEST_CASE("optimizer objectives") {
  OptProblem p;
  p.pipeline = Pipeline::single_stage;
  p.free = {{FreeParam::r2_1, 0.01, 0.5}};
  p.objective = Objective::probability_weighted;
  const double weighted = evaluate(p, {0.1});
  p.objective = Objective::peak_fidelity;
  const double peak = evaluate(p, {0.1});
  CHECK(weighted < peak);
  CHECK(weighted > 0.0);
  p.objective = Objective::beta_max;
  CHECK(evaluate(p, {0.1}) > 1.0);
  p.objective = Objective::fidelity_at_beta;
  p.target_beta = 1.0;
  CHECK(evaluate(p, {0.1}) <= peak + 1e-12);
}

TEST_CASE("optimizer errors") {
  OptProblem p;
  CHECK_THROWS_AS(optimize(p), ConfigError);
  p.free = {{FreeParam::r2_1, 0.1, 1.2}};
  CHECK_THROWS_AS(optimize(p), ConfigError);
  p.free = {{FreeParam::r2_1, 0.1, 0.2}, {FreeParam::r2_1, 0.1, 0.2}};
  CHECK_THROWS_AS(optimize(p), ConfigError);
  p.free = {{FreeParam::r2_3, 0.1, 0.2}};
  p.pipeline = Pipeline::single_stage;
  CHECK_THROWS_AS(optimize(p), ConfigError);

  OptProblem dark;
  dark.base.xi1 = dark.base.xi2 = 0.0;
  dark.free = {{FreeParam::r2_3, 0.2, 0.8}};
  dark.grid_points = 3;
  CHECK_THROWS_AS(optimize(dark), ZeroHeraldError);
}

TEST_CASE("beta_max table") {
  BetaMaxSpec spec;
  spec.lk = {{0, 1}, {1, 0}, {0, 0}};
  spec.grid_points = 11;
  const auto rows = beta_max_curve(spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].parity == Parity::odd);
  REQUIRE(rows[0].beta_max);
  REQUIRE(rows[1].beta_max);
  CHECK(*rows[0].beta_max == doctest::Approx(*rows[1].beta_max).epsilon(0.05));
  CHECK(rows[2].parity == Parity::even);
  CHECK(!rows[2].beta_max);
  CHECK(rows[2].f_star < 1e-12);
  for (const auto& r : rows) {
    CHECK(r.r2 >= spec.r2_lo);
    CHECK(r.r2 <= spec.r2_hi);
  }
}
