#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catamp/analysis.hpp"
#include "catamp/detection.hpp"
#include "catamp/optics.hpp"

namespace catamp {

/// Physical knobs of the two-kitten amplifier. Stage 1 (xi1, r2_1, l1, k1)
/// alone also describes the single-stage generator.
struct SchemeConfig {
  double xi1 = 0.346;
  double xi2 = 0.346;
  double loss1 = 0.0;
  double loss2 = 0.0;
  double r2_1 = 0.05;
  double r2_2 = 0.15;
  double r2_3 = 0.49;
  int l1 = 0;
  int k1 = 1;
  int l2 = 0;
  int k2 = 1;
  int k = 1;
  double eta1 = 1.0;
  double eta2 = 1.0;
  double eta3 = 1.0;
  TruncationPolicy policy;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// parity(l1 - k1 + l2 - k2 - k)
  Parity output_parity() const;
  /// No loss and unit efficiencies everywhere.
  bool is_ideal() const;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

struct StageProbability {
  std::string name;
  double probability;
};

struct SchemeResult {
  SchemeConfig config;
  DensityMatrix output;
  /// Present for the pure pipelines.
  std::optional<PureState> output_pure;
  /// Heralded kitten states entering the combining beam splitter.
  std::vector<DensityMatrix> kittens;
  /// In pipeline order: tap1, tap2, bs3 (single stage: tap1 only).
  std::vector<StageProbability> stages;
  /// Product of every stage probability.
  double overall_product = 0.0;
  /// Probability of the final herald given heralded kittens.
  double final_stage = 0.0;
  CatFit output_fit;
  /// Fits of the kittens against ideal odd cats.
  std::vector<CatFit> kitten_fits;
};

struct RunOptions {
  CatFitOptions fit;
  /// Parity of the reference cat; defaults to the configuration's parity.
  std::optional<Parity> fit_parity;
};

/// l-added/k-subtracted squeezed vacuum from stage 1 of `cfg` (pure path).
SchemeResult run_single_stage(double xi, int l, int k, double r2, const TruncationPolicy& policy = {},
                              const RunOptions& options = {});

/// Two pure kittens combined on BS3 with a k-photon herald.
SchemeResult run_amplifier_ideal(const SchemeConfig& cfg, const RunOptions& options = {});

/// Lossy squeezed vacua, inefficient detectors at every tap, and the
/// mixed-state BS3 herald with Bayes mixing when eta3 < 1.
SchemeResult run_amplifier_imperfect(const SchemeConfig& cfg, const RunOptions& options = {});

/// Dispatches on cfg.is_ideal().
SchemeResult run_amplifier(const SchemeConfig& cfg, const RunOptions& options = {});

/// Pure-path BS3 output without any fitting; used by optimizers.
PureHerald amplifier_state(const SchemeConfig& cfg);

struct SweepPoint {
  double xi;
  double db;
  CatFit fit;
  double probability;
};

/// Amplifier fits with xi1 = xi2 = xi over `xis`, fanned out over `workers`
/// threads. Output order follows `xis`.
std::vector<SweepPoint> sweep_xi(const SchemeConfig& cfg, const std::vector<double>& xis, int workers = 1,
                                 const RunOptions& options = {});

}  // namespace catamp
