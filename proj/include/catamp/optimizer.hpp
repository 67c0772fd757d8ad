#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catamp/scheme.hpp"

namespace catamp {

enum class FreeParam { r2_1, r2_2, r2_3, xi };

std::string to_string(FreeParam p);
FreeParam free_param_from_string(const std::string& s);

struct Bound {
  FreeParam param;
  double lo;
  double hi;
};

enum class Objective {
  /// Peak fidelity F* over the beta scan.
  peak_fidelity,
  /// Fidelity against the cat of amplitude target_beta.
  fidelity_at_beta,
  /// beta_max at f_target; configurations that never reach it score F* - 1.
  beta_max,
  /// F* times the product of stage probabilities.
  probability_weighted,
};

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

enum class Pipeline { single_stage, amplifier };

std::string to_string(Pipeline p);
Pipeline pipeline_from_string(const std::string& s);

/// `xi` drives xi1 for the single stage and xi1 = xi2 for the amplifier.
struct OptProblem {
  SchemeConfig base;
  Pipeline pipeline = Pipeline::amplifier;
  std::vector<Bound> free;
  Objective objective = Objective::peak_fidelity;
  double target_beta = 0.0;
  double f_target = 0.99;
  /// Reference cat parity; defaults to the configuration's parity.
  std::optional<Parity> parity;
  BetaScan scan;
  int grid_points = 21;
  int max_iterations = 200;
  double tolerance = 1e-4;
  int workers = 1;

  /// Throws ConfigError.
  void validate() const;
};

struct OptReport {
  std::vector<std::string> names;
  std::vector<double> best;
  double best_objective = 0.0;
  /// Best value seen on the coarse grid alone.
  double grid_objective = 0.0;
  int evaluations = 0;
  int iterations = 0;
  /// Running best after each evaluation, grid first.
  std::vector<double> trace;
  SchemeConfig best_config;
  Objective objective = Objective::peak_fidelity;
  Pipeline pipeline = Pipeline::amplifier;
};

/// Configuration with the free parameters set to `x`.
SchemeConfig apply_params(const OptProblem& problem, const std::vector<double>& x);

/// Objective at `x`; -inf when a herald has zero probability.
double evaluate(const OptProblem& problem, const std::vector<double>& x);

/// Coarse grid over the box, then bounded Nelder-Mead from the grid winner.
/// Throws ZeroHeraldError when every grid point fails to herald.
OptReport optimize(const OptProblem& problem);

struct BetaMaxSpec {
  std::vector<std::pair<int, int>> lk;
  double xi = 0.346;
  double f_target = 0.99;
  double r2_lo = 1e-3;
  double r2_hi = 0.999;
  int grid_points = 21;
  int workers = 1;
  TruncationPolicy policy;
  BetaScan scan;
};

struct BetaMaxRow {
  int l;
  int k;
  double xi;
  double db;
  double r2;
  /// Natural parity of the heralded support.
  Parity parity;
  /// Against odd cats; absent when the target is never reached.
  std::optional<double> beta_max;
  double f_star;
  double beta_star;
};

/// Single-stage beta_max per (l, k), each at its own optimized R^2.
std::vector<BetaMaxRow> beta_max_curve(const BetaMaxSpec& spec);

}  // namespace catamp
