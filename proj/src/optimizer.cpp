#include "catamp/optimizer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "catamp/errors.hpp"
#include "catamp/parallel.hpp"
#include "catamp/states.hpp"

namespace catamp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Parity reference_parity(const OptProblem& problem, const SchemeConfig& c) {
  if (problem.parity) return *problem.parity;
  if (problem.pipeline == Pipeline::single_stage) return parity_of(std::abs(c.l1 - c.k1));
  return c.output_parity();
}

template <typename State>
double score(const OptProblem& problem, const State& state, const TruncationPolicy& policy, Parity parity,
             double probability) {
  if (problem.objective == Objective::fidelity_at_beta) {
    const Vector cat = cat_amplitudes(problem.target_beta, parity, policy.dim());
    if constexpr (std::is_same_v<State, PureState>) {
      return std::norm(cat.dot(state.amps()));
    } else {
      return cat.dot(state.mat() * cat).real();
    }
  }
  CatFitOptions options;
  options.scan = problem.scan;
  options.f_target = problem.f_target;
  const CatFit fit = cat_fit(state, parity, options);
  switch (problem.objective) {
    case Objective::peak_fidelity:
      return fit.f_star;
    case Objective::beta_max:
      return fit.beta_max ? *fit.beta_max : fit.f_star - 1.0;
    case Objective::probability_weighted:
      return fit.f_star * probability;
    case Objective::fidelity_at_beta:
      break;
  }
  return fit.f_star;
}

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> cost;
};

}  // namespace

std::string to_string(FreeParam p) {
  switch (p) {
    case FreeParam::r2_1:
      return "r2_1";
    case FreeParam::r2_2:
      return "r2_2";
    case FreeParam::r2_3:
      return "r2_3";
    case FreeParam::xi:
      return "xi";
  }
  return "?";
}

FreeParam free_param_from_string(const std::string& s) {
  if (s == "r2_1") return FreeParam::r2_1;
  if (s == "r2_2") return FreeParam::r2_2;
  if (s == "r2_3") return FreeParam::r2_3;
  if (s == "xi") return FreeParam::xi;
  throw ConfigError(fmt::format("unknown free parameter '{}'", s));
}

std::string to_string(Objective o) {
  switch (o) {
    case Objective::peak_fidelity:
      return "peak_fidelity";
    case Objective::fidelity_at_beta:
      return "fidelity_at_beta";
    case Objective::beta_max:
      return "beta_max";
    case Objective::probability_weighted:
      return "probability_weighted";
  }
  return "?";
}

Objective objective_from_string(const std::string& s) {
  if (s == "peak_fidelity") return Objective::peak_fidelity;
  if (s == "fidelity_at_beta") return Objective::fidelity_at_beta;
  if (s == "beta_max") return Objective::beta_max;
  if (s == "probability_weighted") return Objective::probability_weighted;
  throw ConfigError(fmt::format("unknown objective '{}'", s));
}

std::string to_string(Pipeline p) { return p == Pipeline::single_stage ? "single_stage" : "amplifier"; }

Pipeline pipeline_from_string(const std::string& s) {
  if (s == "single_stage") return Pipeline::single_stage;
  if (s == "amplifier") return Pipeline::amplifier;
  throw ConfigError(fmt::format("unknown pipeline '{}'", s));
}

void OptProblem::validate() const {
  base.validate();
  if (free.empty()) throw ConfigError("optimize needs at least one free parameter");
  for (std::size_t i = 0; i < free.size(); ++i) {
    const Bound& b = free[i];
    const std::string name = to_string(b.param);
    for (std::size_t j = 0; j < i; ++j) {
      if (free[j].param == b.param) throw ConfigError(fmt::format("free parameter {} listed twice", name));
    }
    if (!(b.lo <= b.hi)) throw ConfigError(fmt::format("bounds for {} are empty: [{}, {}]", name, b.lo, b.hi));
    if (b.param == FreeParam::xi) {
      if (b.lo < 0.0) throw ConfigError(fmt::format("lower bound for xi must be >= 0, got {}", b.lo));
    } else if (b.lo < 0.0 || b.hi > 1.0) {
      throw ConfigError(fmt::format("bounds for {} must lie in [0, 1], got [{}, {}]", name, b.lo, b.hi));
    }
    if (pipeline == Pipeline::single_stage && (b.param == FreeParam::r2_2 || b.param == FreeParam::r2_3)) {
      throw ConfigError(fmt::format("{} is not used by the single-stage pipeline", name));
    }
  }
  if (grid_points < 1) throw ConfigError("optimizer grid needs at least one point per axis");
  if (max_iterations < 0) throw ConfigError("optimizer iteration count must be >= 0");
  if (!(tolerance > 0.0)) throw ConfigError("optimizer tolerance must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(f_target > 0.0 && f_target < 1.0)) throw ConfigError("f_target must lie in (0, 1)");
  if (objective == Objective::fidelity_at_beta && !(target_beta > 0.0)) {
    throw ConfigError("fidelity_at_beta needs a positive target beta");
  }
}

SchemeConfig apply_params(const OptProblem& problem, const std::vector<double>& x) {
  SchemeConfig c = problem.base;
  for (std::size_t i = 0; i < problem.free.size(); ++i) {
    switch (problem.free[i].param) {
      case FreeParam::r2_1:
        c.r2_1 = x[i];
        break;
      case FreeParam::r2_2:
        c.r2_2 = x[i];
        break;
      case FreeParam::r2_3:
        c.r2_3 = x[i];
        break;
      case FreeParam::xi:
        c.xi1 = x[i];
        if (problem.pipeline == Pipeline::amplifier) c.xi2 = x[i];
        break;
    }
  }
  return c;
}

double evaluate(const OptProblem& problem, const std::vector<double>& x) {
  const SchemeConfig c = apply_params(problem, x);
  const Parity parity = reference_parity(problem, c);
  try {
    if (problem.pipeline == Pipeline::single_stage) {
      const PureHerald h = herald_lk(c.xi1, c.l1, c.k1, BeamSplitter(c.r2_1), c.policy);
      return score(problem, h.state, c.policy, parity, h.probability);
    }
    if (c.is_ideal()) {
      const PureHerald a = herald_lk(c.xi1, c.l1, c.k1, BeamSplitter(c.r2_1), c.policy);
      const PureHerald b = herald_lk(c.xi2, c.l2, c.k2, BeamSplitter(c.r2_2), c.policy);
      const PureHerald out = herald_pure(a.state, b.state, BeamSplitter(c.r2_3), c.k);
      if (out.probability < 1e-14) return kNegInf;
      return score(problem, out.state, c.policy, parity, a.probability * b.probability * out.probability);
    }
    RunOptions options;
    options.fit.scan = problem.scan;
    options.fit.f_target = problem.f_target;
    options.fit_parity = parity;
    const SchemeResult r = run_amplifier_imperfect(c, options);
    return score(problem, r.output, c.policy, parity, r.overall_product);
  } catch (const ZeroHeraldError&) {
    return kNegInf;
  }
}

OptReport optimize(const OptProblem& problem) {
  problem.validate();
  const std::size_t dim = problem.free.size();
  const int g = problem.grid_points;

  auto axis_value = [&](std::size_t axis, int i) {
    const Bound& b = problem.free[axis];
    if (g == 1) return 0.5 * (b.lo + b.hi);
    return b.lo + (b.hi - b.lo) * static_cast<double>(i) / (g - 1);
  };

  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= static_cast<std::size_t>(g);
  std::vector<std::vector<double>> points(total, std::vector<double>(dim));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t d = dim; d-- > 0;) {
      points[idx][d] = axis_value(d, static_cast<int>(rem % g));
      rem /= g;
    }
  }
  std::vector<double> values(total);
  parallel_for(total, problem.workers, [&](std::size_t i) { values[i] = evaluate(problem, points[i]); });

  OptReport report;
  report.objective = problem.objective;
  report.pipeline = problem.pipeline;
  for (const Bound& b : problem.free) report.names.push_back(to_string(b.param));
  double best = kNegInf;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (values[i] > best) {
      best = values[i];
      best_idx = i;
    }
    report.trace.push_back(best);
  }
  if (best == kNegInf) throw ZeroHeraldError("every grid point of the optimization heralds with zero probability", 0.0);
  report.evaluations = static_cast<int>(total);
  report.grid_objective = best;
  std::vector<double> best_x = points[best_idx];

  auto clamp_point = [&](std::vector<double>& x) {
    for (std::size_t d = 0; d < dim; ++d) x[d] = std::clamp(x[d], problem.free[d].lo, problem.free[d].hi);
  };
  // Minimize the negated objective; failed heralds become +inf.
  auto cost = [&](std::vector<double>& x) {
    clamp_point(x);
    const double v = evaluate(problem, x);
    ++report.evaluations;
    if (v > best) {
      best = v;
      best_x = x;
    }
    report.trace.push_back(best);
    return -v;
  };

  if (problem.max_iterations > 0) {
    Simplex s;
    s.x.push_back(best_x);
    s.cost.push_back(-best);
    for (std::size_t d = 0; d < dim; ++d) {
      const Bound& b = problem.free[d];
      const double h = g > 1 ? (b.hi - b.lo) / (g - 1) : 0.1 * (b.hi - b.lo);
      std::vector<double> v = best_x;
      v[d] = v[d] + h <= b.hi ? v[d] + h : v[d] - h;
      const double c = cost(v);
      s.x.push_back(v);
      s.cost.push_back(c);
    }
    double box = 0.0;
    for (const Bound& b : problem.free) box = std::max(box, b.hi - b.lo);
    const double size_tol = 1e-3 * box;

    std::vector<std::size_t> order(dim + 1);
    for (int it = 0; it < problem.max_iterations; ++it) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.cost[a] < s.cost[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t next = order[dim > 0 ? dim - 1 : 0];

      double size = 0.0;
      for (std::size_t v = 0; v <= dim; ++v) {
        for (std::size_t d = 0; d < dim; ++d) size = std::max(size, std::abs(s.x[v][d] - s.x[lo][d]));
      }
      if (s.cost[hi] - s.cost[lo] <= problem.tolerance && size <= size_tol) break;
      report.iterations = it + 1;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t v = 0; v <= dim; ++v) {
        if (v == hi) continue;
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += s.x[v][d] / static_cast<double>(dim);
      }
      auto along = [&](double t) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + t * (s.x[hi][d] - centroid[d]);
        return p;
      };

      std::vector<double> xr = along(-1.0);
      const double fr = cost(xr);
      if (fr < s.cost[lo]) {
        std::vector<double> xe = along(-2.0);
        const double fe = cost(xe);
        if (fe < fr) {
          s.x[hi] = xe;
          s.cost[hi] = fe;
        } else {
          s.x[hi] = xr;
          s.cost[hi] = fr;
        }
        continue;
      }
      if (fr < s.cost[next]) {
        s.x[hi] = xr;
        s.cost[hi] = fr;
        continue;
      }
      const bool outside = fr < s.cost[hi];
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      const double fc = cost(xc);
      if (outside ? fc <= fr : fc <= s.cost[hi]) {
        s.x[hi] = xc;
        s.cost[hi] = fc;
        continue;
      }
      for (std::size_t v = 0; v <= dim; ++v) {
        if (v == lo) continue;
        for (std::size_t d = 0; d < dim; ++d) s.x[v][d] = s.x[lo][d] + 0.5 * (s.x[v][d] - s.x[lo][d]);
        s.cost[v] = cost(s.x[v]);
      }
    }
  }

  report.best = best_x;
  report.best_objective = best;
  report.best_config = apply_params(problem, best_x);
  return report;
}

std::vector<BetaMaxRow> beta_max_curve(const BetaMaxSpec& spec) {
  if (spec.lk.empty()) throw ConfigError("beta_max_curve needs at least one (l, k) pair");
  std::vector<std::optional<BetaMaxRow>> slots(spec.lk.size());
  parallel_for(spec.lk.size(), spec.workers, [&](std::size_t i) {
    const auto [l, k] = spec.lk[i];
    OptProblem problem;
    problem.pipeline = Pipeline::single_stage;
    problem.base.xi1 = spec.xi;
    problem.base.l1 = l;
    problem.base.k1 = k;
    problem.base.policy = spec.policy;
    problem.free = {{FreeParam::r2_1, spec.r2_lo, spec.r2_hi}};
    problem.objective = Objective::beta_max;
    problem.f_target = spec.f_target;
    problem.parity = Parity::odd;
    problem.scan = spec.scan;
    problem.grid_points = spec.grid_points;
    const OptReport report = optimize(problem);

    const double r2 = report.best.front();
    const PureHerald h = herald_lk(spec.xi, l, k, BeamSplitter(r2), spec.policy);
    CatFitOptions options;
    options.scan = spec.scan;
    options.f_target = spec.f_target;
    const CatFit fit = cat_fit(h.state, Parity::odd, options);
    slots[i] = BetaMaxRow{l,           k,   spec.xi, squeezing_db(spec.xi), r2, parity_of(std::abs(l - k)),
                          fit.beta_max, fit.f_star, fit.beta_star};
  });
  std::vector<BetaMaxRow> rows;
  for (auto& s : slots) rows.push_back(*s);
  return rows;
}

}  // namespace catamp
