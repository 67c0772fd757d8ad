#pragma once

#include <optional>
#include <vector>

#include "catamp/fock.hpp"
#include "catamp/optics.hpp"

namespace catamp {

/// Photon-number-resolving detector with quantum efficiency eta in (0, 1].
/// Dark counts are not modelled.
class DetectorSpec {
 public:
  explicit DetectorSpec(double eta = 1.0);
  double eta() const { return eta_; }

 private:
  double eta_;
};

/// Conditional states rho_out,k (unnormalized, trace S(k)) for k = 0..k_cap.
/// Members with S(k) below 1e-14 are empty.
struct HeraldEnsemble {
  std::vector<double> probabilities;
  std::vector<std::optional<DensityMatrix>> states;

  int k_cap() const { return static_cast<int>(probabilities.size()) - 1; }
  double total_probability() const;
};

/// P(m|k) = C(k, m) eta^m (1 - eta)^(k - m); zero for m > k.
double detection_likelihood(int m, int k, const DetectorSpec& det);

/// Heralds of rho1 (x) rho2 on `bs` for k = 0, 1, ... until the cumulative
/// probability reaches `coverage`, never below `min_k` and capped at n_max.
HeraldEnsemble build_ensemble(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs,
                              int min_k = 0, double coverage = 1.0 - 1e-6);

/// sum_k P(m|k) S(k): probability of the click pattern m.
double observation_probability(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det);

/// Q(k|m) = P(m|k) S(k) / sum_i P(m|i) S(i), indexed by k = 0..k_cap.
/// Throws ImpossibleObservationError when the denominator vanishes.
std::vector<double> bayes_posterior(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det);

/// sum_k Q(k|m) rho_out,k / S(k): normalized state after observing m clicks.
DensityMatrix heralded_mixture(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det);

}  // namespace catamp
