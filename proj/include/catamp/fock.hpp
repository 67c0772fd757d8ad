#pragma once

#include <Eigen/Dense>

#include "catamp/numeric.hpp"

namespace catamp {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Fock cutoff: amplitudes are kept for photon numbers 0..n_max.
struct TruncationPolicy {
  int n_max = 40;
  double tail_tol = 1e-8;

  int dim() const { return n_max + 1; }
  /// Throws ConfigError unless n_max >= 4 and tail_tol in (0, 1e-3].
  void validate() const;

  friend bool operator==(const TruncationPolicy&, const TruncationPolicy&) = default;
};

/// Single-mode pure state in the truncated Fock basis. Not necessarily
/// normalized: heralded states keep their success probability as norm^2.
class PureState {
 public:
  /// Requires amps.size() == policy.dim() and 0 < norm^2 <= 1 + 1e-9.
  /// Warns when the mass in the top four levels exceeds policy.tail_tol.
  PureState(Vector amps, TruncationPolicy policy = {});

  static PureState fock(int n, TruncationPolicy policy = {});

  const Vector& amps() const { return amps_; }
  const TruncationPolicy& policy() const { return policy_; }
  int n_max() const { return policy_.n_max; }
  int dim() const { return policy_.dim(); }
  Complex operator[](int n) const { return amps_(n); }

  double norm2() const { return amps_.squaredNorm(); }
  PureState normalized() const;
  /// Mass in photon numbers n > n_max - 4.
  double tail_mass() const;
  /// <this|other>
  Complex inner(const PureState& other) const;
  double mean_photon_number() const;

 private:
  Vector amps_;
  TruncationPolicy policy_;
};

/// Two-mode pure amplitudes c(n_a, n_b) over the product basis.
class TwoModeState {
 public:
  TwoModeState(Matrix amps, TruncationPolicy policy = {});

  const Matrix& amps() const { return amps_; }
  const TruncationPolicy& policy() const { return policy_; }
  int n_max() const { return policy_.n_max; }
  Complex operator()(int na, int nb) const { return amps_(na, nb); }
  double norm2() const { return amps_.squaredNorm(); }

 private:
  Matrix amps_;
  TruncationPolicy policy_;
};

/// Hermitian, positive semidefinite single-mode operator. An unnormalized
/// instance carries a herald probability as its trace.
class DensityMatrix {
 public:
  /// Checks shape, hermiticity (1e-10) and trace range; the (costlier) PSD
  /// check is separate, see check_physical().
  DensityMatrix(Matrix mat, TruncationPolicy policy = {}, bool normalized = false);

  const Matrix& mat() const { return mat_; }
  const TruncationPolicy& policy() const { return policy_; }
  int n_max() const { return policy_.n_max; }
  int dim() const { return policy_.dim(); }
  bool is_normalized() const { return normalized_; }
  Complex operator()(int m, int n) const { return mat_(m, n); }

  double trace() const { return mat_.trace().real(); }
  /// Divides by the trace; throws ZeroHeraldError when trace < 1e-14.
  DensityMatrix normalized() const;
  double purity() const;
  Eigen::VectorXd eigenvalues() const;
  /// Throws NumericError if an eigenvalue is below -1e-9 or the trace is
  /// out of range.
  void check_physical() const;

 private:
  Matrix mat_;
  TruncationPolicy policy_;
  bool normalized_;
};

/// a (x) b with amps(n, m) = a[n] b[m].
TwoModeState tensor(const PureState& a, const PureState& b);

/// <k|_b s: keeps mode a. Norm^2 of the result is the probability of
/// finding k photons in mode b.
PureState project_mode_b(const TwoModeState& s, int k);

/// <k|_a s: keeps mode b.
PureState project_mode_a(const TwoModeState& s, int k);

/// |p><p| for a normalized p.
DensityMatrix purity_embed(const PureState& p);

}  // namespace catamp
