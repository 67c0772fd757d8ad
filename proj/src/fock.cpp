#include "catamp/fock.hpp"

#include <fmt/format.h>

#include "catamp/errors.hpp"
#include "catamp/logging.hpp"

namespace catamp {
namespace {

constexpr double kNormSlack = 1e-9;
constexpr double kHermitianTol = 1e-10;
constexpr double kZeroHerald = 1e-14;

void require_same_policy(const TruncationPolicy& a, const TruncationPolicy& b, const char* what) {
  if (a.n_max != b.n_max) {
    throw ConfigError(fmt::format("{}: truncation mismatch (n_max {} vs {})", what, a.n_max, b.n_max));
  }
}

}  // namespace

void TruncationPolicy::validate() const {
  if (n_max < 4) throw ConfigError(fmt::format("truncation.n_max must be >= 4 (got {})", n_max));
  if (!(tail_tol > 0.0 && tail_tol <= 1e-3)) {
    throw ConfigError(fmt::format("truncation.tail_tol must lie in (0, 1e-3] (got {})", tail_tol));
  }
}

PureState::PureState(Vector amps, TruncationPolicy policy) : amps_(std::move(amps)), policy_(policy) {
  policy_.validate();
  if (amps_.size() != policy_.dim()) {
    throw ConfigError(fmt::format("state has {} amplitudes, expected {}", amps_.size(), policy_.dim()));
  }
  const double n2 = norm2();
  if (!(n2 > 0.0) || n2 > 1.0 + kNormSlack) {
    throw DomainError(fmt::format("pure state norm^2 {} outside (0, 1]", n2));
  }
  const double tail = tail_mass();
  if (tail >= policy_.tail_tol * n2) {
    warn(fmt::format("truncation: tail mass {:.3e} above tolerance {:.1e} at n_max={}", tail / n2,
                     policy_.tail_tol, policy_.n_max));
  }
}

PureState PureState::fock(int n, TruncationPolicy policy) {
  if (n < 0 || n > policy.n_max) {
    throw RangeError(fmt::format("Fock index {} outside 0..{}", n, policy.n_max));
  }
  Vector v = Vector::Zero(policy.dim());
  v(n) = 1.0;
  return PureState(std::move(v), policy);
}

PureState PureState::normalized() const { return PureState(amps_ / std::sqrt(norm2()), policy_); }

double PureState::tail_mass() const {
  const int start = std::max(0, policy_.n_max - 3);
  return amps_.tail(policy_.dim() - start).squaredNorm();
}

Complex PureState::inner(const PureState& other) const {
  require_same_policy(policy_, other.policy_, "inner product");
  return amps_.dot(other.amps_);
}

double PureState::mean_photon_number() const {
  double acc = 0.0;
  for (int n = 0; n < dim(); ++n) acc += n * std::norm(amps_(n));
  return acc / norm2();
}

TwoModeState::TwoModeState(Matrix amps, TruncationPolicy policy) : amps_(std::move(amps)), policy_(policy) {
  policy_.validate();
  if (amps_.rows() != policy_.dim() || amps_.cols() != policy_.dim()) {
    throw ConfigError("two-mode amplitude matrix has the wrong shape");
  }
  const double n2 = norm2();
  if (!(n2 > 0.0) || n2 > 1.0 + kNormSlack) {
    throw DomainError(fmt::format("two-mode norm^2 {} outside (0, 1]", n2));
  }
}

DensityMatrix::DensityMatrix(Matrix mat, TruncationPolicy policy, bool normalized)
    : mat_(std::move(mat)), policy_(policy), normalized_(normalized) {
  policy_.validate();
  if (mat_.rows() != policy_.dim() || mat_.cols() != policy_.dim()) {
    throw ConfigError("density matrix has the wrong shape");
  }
  const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw NumericError(fmt::format("density matrix not Hermitian (deviation {:.3e})", herm));
  }
  const double tr = trace();
  if (normalized_) {
    if (std::abs(tr - 1.0) > 1e-10) throw NumericError(fmt::format("normalized trace {} != 1", tr));
  } else if (!(tr > 0.0) || tr > 1.0 + kNormSlack) {
    throw NumericError(fmt::format("unnormalized trace {} outside (0, 1]", tr));
  }
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (tr < kZeroHerald) throw ZeroHeraldError("cannot normalize a zero-probability herald", tr);
  return DensityMatrix(mat_ / tr, policy_, true);
}

double DensityMatrix::purity() const {
  const double tr = trace();
  return (mat_ * mat_).trace().real() / (tr * tr);
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void DensityMatrix::check_physical() const {
  const Eigen::VectorXd ev = eigenvalues();
  if (ev.minCoeff() < -1e-9) {
    throw NumericError(fmt::format("density matrix not PSD (min eigenvalue {:.3e})", ev.minCoeff()));
  }
  const double tr = trace();
  if (normalized_ ? std::abs(tr - 1.0) > 1e-10 : (tr <= 0.0 || tr > 1.0 + kNormSlack)) {
    throw NumericError(fmt::format("trace {} out of range", tr));
  }
}

TwoModeState tensor(const PureState& a, const PureState& b) {
  require_same_policy(a.policy(), b.policy(), "tensor");
  return TwoModeState(a.amps() * b.amps().transpose(), a.policy());
}

PureState project_mode_b(const TwoModeState& s, int k) {
  if (k < 0 || k > s.n_max()) throw RangeError(fmt::format("herald count {} outside 0..{}", k, s.n_max()));
  Vector v = s.amps().col(k);
  const double p = v.squaredNorm();
  if (p < kZeroHerald) throw ZeroHeraldError(fmt::format("zero-probability herald at k={}", k), p);
  return PureState(std::move(v), s.policy());
}

PureState project_mode_a(const TwoModeState& s, int k) {
  if (k < 0 || k > s.n_max()) throw RangeError(fmt::format("herald count {} outside 0..{}", k, s.n_max()));
  Vector v = s.amps().row(k).transpose();
  const double p = v.squaredNorm();
  if (p < kZeroHerald) throw ZeroHeraldError(fmt::format("zero-probability herald at k={}", k), p);
  return PureState(std::move(v), s.policy());
}

DensityMatrix purity_embed(const PureState& p) {
  if (std::abs(p.norm2() - 1.0) > 1e-10) throw DomainError("purity_embed expects a normalized state");
  return DensityMatrix(p.amps() * p.amps().adjoint(), p.policy(), true);
}

}  // namespace catamp
