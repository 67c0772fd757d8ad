#include "catamp/optics.hpp"

#include <fmt/format.h>

#include <limits>
#include <vector>

#include "catamp/errors.hpp"
#include "catamp/logging.hpp"
#include "catamp/states.hpp"

namespace catamp {
namespace {

constexpr double kZeroHerald = 1e-14;

// exponent * log(base) with 0 * log(0) = 0.
double power_log(int exponent, double log_base) { return exponent == 0 ? 0.0 : exponent * log_base; }

void require_same(const TruncationPolicy& a, const TruncationPolicy& b) {
  if (a.n_max != b.n_max) {
    throw ConfigError(fmt::format("beam splitter inputs have different n_max ({} vs {})", a.n_max, b.n_max));
  }
}

void require_count(int k, int n_max) {
  if (k < 0 || k > n_max) throw RangeError(fmt::format("herald count {} outside 0..{}", k, n_max));
}

// Coefficients c(n1, n2) = bs_amplitude(n1, n2, k) for every pair whose
// remaining photon number n1 + n2 - k fits in 0..n_max.
Eigen::MatrixXd herald_table(int n_max, int k, const BeamSplitter& bs) {
  const int dim = n_max + 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) {
      const int rest = n1 + n2 - k;
      if (rest < 0 || rest > n_max) continue;
      c(n1, n2) = bs_amplitude(n1, n2, k, bs);
    }
  }
  return c;
}

// Per-entry Neumaier accumulation for a complex matrix.
class CompensatedMatrix {
 public:
  explicit CompensatedMatrix(int dim)
      : re_(Eigen::MatrixXd::Zero(dim, dim)),
        im_(Eigen::MatrixXd::Zero(dim, dim)),
        re_c_(Eigen::MatrixXd::Zero(dim, dim)),
        im_c_(Eigen::MatrixXd::Zero(dim, dim)) {}

  void add(int row, int col, const Complex& v) {
    accumulate(re_(row, col), re_c_(row, col), v.real());
    accumulate(im_(row, col), im_c_(row, col), v.imag());
  }

  Matrix value() const {
    Matrix out(re_.rows(), re_.cols());
    out.real() = re_ + re_c_;
    out.imag() = im_ + im_c_;
    return out;
  }

 private:
  static void accumulate(double& sum, double& comp, double v) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }

  Eigen::MatrixXd re_, im_, re_c_, im_c_;
};

}  // namespace

BeamSplitter::BeamSplitter(double r2) : r2_(r2) {
  if (!(r2 >= 0.0 && r2 <= 1.0)) throw ConfigError(fmt::format("reflectivity R^2 must lie in [0, 1] (got {})", r2));
  r_ = std::sqrt(r2);
  t_ = std::sqrt(1.0 - r2);
}

LossChannel::LossChannel(double loss) : loss_(loss) {
  if (!(loss >= 0.0 && loss < 1.0)) throw ConfigError(fmt::format("loss must lie in [0, 1) (got {})", loss));
}

double bs_amplitude(int n1, int n2, int k, const BeamSplitter& bs) {
  const int total = n1 + n2;
  if (n1 < 0 || n2 < 0 || k < 0 || k > total) return 0.0;
  const double log_t = bs.transmittance() > 0.0 ? std::log(bs.transmittance()) : -std::numeric_limits<double>::infinity();
  const double log_r = bs.reflectance() > 0.0 ? std::log(bs.reflectance()) : -std::numeric_limits<double>::infinity();
  const double log_norm = 0.5 * (log_factorial(k) + log_factorial(total - k) - log_factorial(n1) - log_factorial(n2));
  KahanSum acc;
  // j photons reach the detected port from input 1, i = k - j from input 2.
  for (int j = std::max(0, k - n2); j <= std::min(n1, k); ++j) {
    const int i = k - j;
    const int t_exp = j + (n2 - i);
    const int r_exp = (n1 - j) + i;
    const double lt = power_log(t_exp, log_t);
    const double lr = power_log(r_exp, log_r);
    if (std::isinf(lt) || std::isinf(lr)) continue;
    const double mag = std::exp(log_binomial(n1, j) + log_binomial(n2, i) + lt + lr + log_norm);
    acc.add(sign_of_power(i) * mag);
  }
  return acc.value();
}

TwoModeState bs_pure(const PureState& a, const PureState& b, const BeamSplitter& bs) {
  require_same(a.policy(), b.policy());
  const int n_max = a.n_max();
  const int dim = a.dim();
  Matrix out = Matrix::Zero(dim, dim);
  double dropped = 0.0;
  for (int n1 = 0; n1 < dim; ++n1) {
    if (a[n1] == Complex(0.0)) continue;
    for (int n2 = 0; n2 < dim; ++n2) {
      const Complex amp = a[n1] * b[n2];
      if (amp == Complex(0.0)) continue;
      const int total = n1 + n2;
      for (int k = 0; k <= total; ++k) {
        const Complex term = amp * bs_amplitude(n1, n2, k, bs);
        if (k > n_max || total - k > n_max) {
          dropped += std::norm(term);
        } else {
          out(k, total - k) += term;
        }
      }
    }
  }
  const double in_norm = a.norm2() * b.norm2();
  if (dropped > a.policy().tail_tol * in_norm) {
    warn(fmt::format("beam splitter output leaves the n_max={} box (dropped {:.3e})", n_max, dropped / in_norm));
  }
  return TwoModeState(std::move(out), a.policy());
}

PureHerald herald_lk(double xi, int l, int k, const BeamSplitter& bs, const TruncationPolicy& policy) {
  policy.validate();
  require_count(l, policy.n_max);
  require_count(k, policy.n_max);
  const PureState sqz = squeezed_vacuum(xi, policy);
  // gamma_n = alpha_2n <k, 2n+l-k| U |l, 2n>, placed at |2n + l - k>.
  Vector v = Vector::Zero(policy.dim());
  for (int n = 0; 2 * n <= policy.n_max; ++n) {
    const int out = 2 * n + l - k;
    if (out < 0 || out > policy.n_max) continue;
    v(out) = sqz[2 * n] * bs_amplitude(l, 2 * n, k, bs);
  }
  const double p = v.squaredNorm();
  if (p < kZeroHerald) {
    throw ZeroHeraldError(fmt::format("l={} k={} herald at R^2={} has zero probability", l, k, bs.r2()), p);
  }
  return {PureState(v / std::sqrt(p), policy), p};
}

PureHerald herald_pure(const PureState& a, const PureState& b, const BeamSplitter& bs, int k) {
  require_same(a.policy(), b.policy());
  const int n_max = a.n_max();
  require_count(k, n_max);
  const Eigen::MatrixXd c = herald_table(n_max, k, bs);
  std::vector<ComplexKahanSum> acc(a.dim());
  for (int n1 = 0; n1 < a.dim(); ++n1) {
    if (a[n1] == Complex(0.0)) continue;
    for (int n2 = 0; n2 < b.dim(); ++n2) {
      const int rest = n1 + n2 - k;
      if (rest < 0 || rest > n_max || c(n1, n2) == 0.0) continue;
      acc[rest].add(a[n1] * b[n2] * c(n1, n2));
    }
  }
  Vector v(a.dim());
  for (int n = 0; n < a.dim(); ++n) v(n) = acc[n].value();
  const double p = v.squaredNorm();
  if (p < kZeroHerald) {
    throw ZeroHeraldError(fmt::format("k={} herald at R^2={} has zero probability", k, bs.r2()), p);
  }
  return {PureState(v / std::sqrt(p), a.policy()), p};
}

Matrix mixed_herald_matrix(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs, int k) {
  require_same(rho1.policy(), rho2.policy());
  const int n_max = rho1.n_max();
  require_count(k, n_max);
  const int dim = rho1.dim();
  const Eigen::MatrixXd c = herald_table(n_max, k, bs);
  const Matrix& r1 = rho1.mat();
  const Matrix& r2 = rho2.mat();

  CompensatedMatrix acc(dim);

  // rho_out,k = sum_{m,p,n,q} r1(m,n) r2(p,q) c(m,p) c(n,q) |m+p-k><n+q-k|
  for (int m = 0; m < dim; ++m) {
    for (int p = 0; p < dim; ++p) {
      const double c_mp = c(m, p);
      if (c_mp == 0.0) continue;
      const int row = m + p - k;
      for (int n = 0; n < dim; ++n) {
        const Complex a = r1(m, n);
        if (a == Complex(0.0)) continue;
        const Complex a_scaled = a * c_mp;
        for (int q = 0; q < dim; ++q) {
          const double c_nq = c(n, q);
          if (c_nq == 0.0) continue;
          const Complex b = r2(p, q);
          if (b == Complex(0.0)) continue;
          acc.add(row, n + q - k, a_scaled * b * c_nq);
        }
      }
    }
  }
  Matrix out = acc.value();
  // Remove rounding-level anti-Hermitian residue.
  return 0.5 * (out + out.adjoint());
}

DensityMatrix bs_mixed_herald(const DensityMatrix& rho1, const DensityMatrix& rho2, const BeamSplitter& bs, int k) {
  Matrix out = mixed_herald_matrix(rho1, rho2, bs, k);
  const double s = out.trace().real();
  if (s < kZeroHerald) {
    throw ZeroHeraldError(fmt::format("k={} herald at R^2={} has zero probability", k, bs.r2()), s);
  }
  return DensityMatrix(std::move(out), rho1.policy(), false);
}

DensityMatrix apply_loss(const DensityMatrix& rho, const LossChannel& channel) {
  const double loss = channel.loss();
  if (loss == 0.0) return rho;
  const double keep = 1.0 - loss;
  const int dim = rho.dim();
  const double log_keep = std::log(keep);
  const double log_loss = std::log(loss);
  Matrix out = Matrix::Zero(dim, dim);
  // E_j |n> = sqrt(C(n, j) keep^{n-j} loss^j) |n - j>
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const Complex v = rho(m, n);
      if (v == Complex(0.0)) continue;
      for (int j = 0; j <= std::min(m, n); ++j) {
        const double w = std::exp(0.5 * (log_binomial(m, j) + log_binomial(n, j)) +
                                  0.5 * (m + n - 2 * j) * log_keep + j * log_loss);
        out(m - j, n - j) += w * v;
      }
    }
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out), rho.policy(), rho.is_normalized());
}

}  // namespace catamp
