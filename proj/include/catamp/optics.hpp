#pragma once

#include "catamp/fock.hpp"

namespace catamp {

/// Lossless two-port beam splitter with real amplitudes R = sqrt(r2),
/// T = sqrt(1 - r2).
///
/// Port convention, used by every function in this header: creation
/// operators transform as
///   a1^dag -> T a1^dag + R a2^dag
///   a2^dag -> T a2^dag - R a1^dag
/// so photons reflected from input 2 into output 1 pick up (-1) each.
/// Output 1 is the heralding (detected) port; output 2 carries the state.
/// For a photon-subtraction tap, input 1 holds the added Fock state |l>
/// (vacuum for pure subtraction) and input 2 the squeezed vacuum.
class BeamSplitter {
 public:
  explicit BeamSplitter(double r2);

  double r2() const { return r2_; }
  double reflectance() const { return r_; }
  double transmittance() const { return t_; }

 private:
  double r2_;
  double r_;
  double t_;
};

/// Attenuation channel: mixing with vacuum on a beam splitter of
/// intensity transmittance 1 - loss and discarding the ancilla.
class LossChannel {
 public:
  explicit LossChannel(double loss);
  double loss() const { return loss_; }

 private:
  double loss_;
};

/// <k, n1+n2-k| U |n1, n2> under the port convention above, as the
/// binomial double sum collapsed on the heralded count k.
double bs_amplitude(int n1, int n2, int k, const BeamSplitter& bs);

/// U (a (x) b), restricted to both output modes <= n_max. Mass that would
/// leave the box is dropped with a warning when above tail_tol.
TwoModeState bs_pure(const PureState& a, const PureState& b, const BeamSplitter& bs);

/// Normalized heralded state plus its success probability.
struct PureHerald {
  PureState state;
  double probability;
};

/// l-photon-added, k-photon-subtracted squeezed vacuum: |l> on input 1,
/// squeezed_vacuum(xi) on input 2, k photons detected on output 1.
/// Support is |2n + l - k>. Throws ZeroHeraldError when probability < 1e-14.
PureHerald herald_lk(double xi, int l, int k, const BeamSplitter& bs, const TruncationPolicy& policy = {});

/// Two pure inputs combined on `bs`, k photons detected on output 1.
/// Probability is relative to the (possibly unnormalized) input norms.
PureHerald herald_pure(const PureState& a, const PureState& b, const BeamSplitter& bs, int k);

/// <k|_1 U (rho1 (x) rho2) U^dag |k>_1 evaluated entrywise from the
/// closed-form sum, never forming the two-mode density matrix. The result
/// is unnormalized with trace S(k). Throws ZeroHeraldError for S(k) < 1e-14.
DensityMatrix bs_mixed_herald(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs,
                              int k);

/// Same sum as bs_mixed_herald but returns the raw matrix, zero included.
Matrix mixed_herald_matrix(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs, int k);

/// Standard attenuation Kraus map; preserves trace.
DensityMatrix apply_loss(const DensityMatrix& rho, const LossChannel& channel);

}  // namespace catamp
