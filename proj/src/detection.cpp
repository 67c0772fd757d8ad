#include "catamp/detection.hpp"

#include <fmt/format.h>

#include "catamp/errors.hpp"

namespace catamp {
namespace {

constexpr double kZeroHerald = 1e-14;

}  // namespace

DetectorSpec::DetectorSpec(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError(fmt::format("detector efficiency must lie in (0, 1] (got {})", eta));
}

double HeraldEnsemble::total_probability() const {
  KahanSum acc;
  for (double p : probabilities) acc.add(p);
  return acc.value();
}

double detection_likelihood(int m, int k, const DetectorSpec& det) {
  if (m < 0 || k < 0 || m > k) return 0.0;
  const double eta = det.eta();
  if (eta == 1.0) return m == k ? 1.0 : 0.0;
  return std::exp(log_binomial(k, m) + m * std::log(eta) + (k - m) * std::log1p(-eta));
}

HeraldEnsemble build_ensemble(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs, int min_k,
                              double coverage) {
  const int n_max = rho1.n_max();
  if (min_k > n_max) throw RangeError(fmt::format("herald count {} outside 0..{}", min_k, n_max));
  const double input_mass = rho1.trace() * rho2.trace();
  HeraldEnsemble ensemble;
  KahanSum cumulative;
  for (int k = 0; k <= n_max; ++k) {
    Matrix m = mixed_herald_matrix(rho1, rho2, bs, k);
    const double s = m.trace().real();
    ensemble.probabilities.push_back(s);
    if (s >= kZeroHerald) {
      ensemble.states.emplace_back(DensityMatrix(std::move(m), rho1.policy(), false));
    } else {
      ensemble.states.emplace_back(std::nullopt);
    }
    cumulative.add(s);
    if (k >= min_k && cumulative.value() >= coverage * input_mass) break;
  }
  return ensemble;
}

double observation_probability(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det) {
  KahanSum acc;
  for (int k = m; k <= ensemble.k_cap(); ++k) acc.add(detection_likelihood(m, k, det) * ensemble.probabilities[k]);
  return acc.value();
}

std::vector<double> bayes_posterior(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det) {
  if (ensemble.probabilities.empty()) throw ImpossibleObservationError("empty herald ensemble");
  const double denom = observation_probability(m, ensemble, det);
  if (!(denom > kZeroHerald)) {
    throw ImpossibleObservationError(
        fmt::format("observing {} photon(s) has zero probability under the ensemble (k_cap={})", m, ensemble.k_cap()));
  }
  std::vector<double> q(ensemble.probabilities.size(), 0.0);
  for (int k = m; k <= ensemble.k_cap(); ++k) {
    q[k] = detection_likelihood(m, k, det) * ensemble.probabilities[k] / denom;
  }
  return q;
}

DensityMatrix heralded_mixture(int m, const HeraldEnsemble& ensemble, const DetectorSpec& det) {
  const std::vector<double> q = bayes_posterior(m, ensemble, det);
  std::optional<Matrix> mix;
  TruncationPolicy policy;
  for (int k = m; k <= ensemble.k_cap(); ++k) {
    if (q[k] == 0.0 || !ensemble.states[k]) continue;
    const DensityMatrix& member = *ensemble.states[k];
    if (!mix) {
      mix = Matrix::Zero(member.dim(), member.dim());
      policy = member.policy();
    }
    *mix += (q[k] / ensemble.probabilities[k]) * member.mat();
  }
  if (!mix) throw ImpossibleObservationError("posterior has no populated member");
  // Trace is 1 up to rounding of the posterior weights.
  Matrix out = *mix / mix->trace().real();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out), policy, true);
}

}  // namespace catamp
