#include "catamp/states.hpp"

#include <fmt/format.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "catamp/errors.hpp"

namespace catamp {
namespace {

// Ten log10(e^{-2 xi}) = -20 xi / ln(10).
constexpr double kDbPerXi = 20.0 / 2.302585092994045684;

// Extra levels used when squeezing so that generator truncation does not
// leak into the kept block.
int enlarged_dim(const TruncationPolicy& policy) { return 2 * policy.dim() + 24; }

}  // namespace

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw ConfigError(fmt::format("unknown parity '{}'", s));
}

Parity parity_of(int n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }

std::string to_string(SqueezeAxis a) { return a == SqueezeAxis::position ? "position" : "momentum"; }

SqueezeAxis squeeze_axis_from_string(const std::string& s) {
  if (s == "position") return SqueezeAxis::position;
  if (s == "momentum") return SqueezeAxis::momentum;
  throw ConfigError(fmt::format("unknown squeeze axis '{}'", s));
}

double squeezing_db(double xi) { return -kDbPerXi * xi; }

double xi_from_db(double db) { return std::abs(db) / kDbPerXi; }

PureState coherent(double beta, const TruncationPolicy& policy) {
  policy.validate();
  if (beta * beta > policy.n_max / 4.0) {
    throw TruncationError(
        fmt::format("coherent amplitude {} exceeds the tail-safe bound sqrt(n_max/4) = {:.3f}", beta,
                    std::sqrt(policy.n_max / 4.0)),
        0.0);
  }
  Vector v = Vector::Zero(policy.dim());
  if (beta == 0.0) {
    v(0) = 1.0;
  } else {
    const double lb = std::log(std::abs(beta));
    for (int n = 0; n < policy.dim(); ++n) {
      const double mag = std::exp(-0.5 * beta * beta + n * lb - 0.5 * log_factorial(n));
      v(n) = (beta < 0.0 && n % 2 == 1) ? -mag : mag;
    }
  }
  const double kept = v.squaredNorm();
  if (1.0 - kept > policy.tail_tol) {
    throw TruncationError(fmt::format("coherent({}) loses {:.3e} beyond n_max", beta, 1.0 - kept), 1.0 - kept);
  }
  return PureState(v / std::sqrt(kept), policy);
}

PureState squeezed_vacuum(double xi, const TruncationPolicy& policy) {
  policy.validate();
  if (xi < 0.0) throw DomainError(fmt::format("squeezing parameter must be >= 0 (got {})", xi));
  Vector v = Vector::Zero(policy.dim());
  const double th = std::tanh(xi);
  const double pre = -0.5 * std::log(std::cosh(xi));
  for (int n = 0; 2 * n <= policy.n_max; ++n) {
    if (n > 0 && th == 0.0) break;
    const double log_mag = pre + (n > 0 ? n * std::log(th) : 0.0) + 0.5 * log_factorial(2 * n) -
                           n * std::log(2.0) - log_factorial(n);
    v(2 * n) = std::exp(log_mag);
  }
  const double kept = v.squaredNorm();
  const double lost = std::max(0.0, 1.0 - kept);
  if (lost > policy.tail_tol) {
    throw TruncationError(
        fmt::format("squeezed vacuum xi={} loses {:.3e} beyond n_max={}", xi, lost, policy.n_max), lost);
  }
  return PureState(v, policy);
}

Vector cat_amplitudes(double beta, Parity parity, int dim) {
  if (beta < 0.0) throw DomainError(fmt::format("cat amplitude must be >= 0 (got {})", beta));
  Vector v = Vector::Zero(dim);
  const int first = parity == Parity::even ? 0 : 1;
  if (beta == 0.0) {
    if (parity == Parity::odd) throw DomainError("odd cat with beta = 0 is undefined");
    v(0) = 1.0;
    return v;
  }
  const double lb = std::log(beta);
  // Scale by the largest log-magnitude to stay in range for any beta.
  double peak = -std::numeric_limits<double>::infinity();
  for (int n = first; n < dim; n += 2) peak = std::max(peak, n * lb - 0.5 * log_factorial(n));
  for (int n = first; n < dim; n += 2) v(n) = std::exp(n * lb - 0.5 * log_factorial(n) - peak);
  return v / v.norm();
}

PureState ideal_cat(const CatSpec& spec, const TruncationPolicy& policy) {
  policy.validate();
  if (spec.squeezing_db != 0.0) throw DomainError("ideal_cat requires squeezing_db == 0; use squeezed_cat");
  // Mass the truncated cat misses relative to the infinite-dimensional one.
  const Vector wide = cat_amplitudes(spec.beta, spec.parity, enlarged_dim(policy));
  const double lost = wide.tail(wide.size() - policy.dim()).squaredNorm();
  if (lost > policy.tail_tol) {
    throw TruncationError(fmt::format("cat beta={} loses {:.3e} beyond n_max={}", spec.beta, lost, policy.n_max),
                          lost);
  }
  Vector v = wide.head(policy.dim());
  return PureState(v / v.norm(), policy);
}

SqueezeKernel::SqueezeKernel(double xi, SqueezeAxis axis, const TruncationPolicy& policy) {
  policy.validate();
  if (xi < 0.0) throw DomainError(fmt::format("squeeze magnitude must be >= 0 (got {})", xi));
  const int big = enlarged_dim(policy);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(big, big);
  for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd a2 = a * a;
  // exp(r/2 (a^2 - a^dag^2)) maps x -> x e^{-r}.
  const double r = axis == SqueezeAxis::position ? xi : -xi;
  const Eigen::MatrixXd gen = 0.5 * r * (a2 - a2.transpose());
  const Eigen::MatrixXd s = gen.exp();
  kernel_ = s.topRows(policy.dim()).cast<Complex>();
  discarded_ = s.bottomRows(big - policy.dim()).cast<Complex>();
}

Vector SqueezeKernel::apply(const Vector& amps) const {
  if (amps.size() == input_dim()) return kernel_ * amps;
  Vector padded = Vector::Zero(input_dim());
  padded.head(std::min<Eigen::Index>(amps.size(), input_dim())) = amps.head(std::min<Eigen::Index>(amps.size(), input_dim()));
  return kernel_ * padded;
}

double SqueezeKernel::deficit(const Vector& amps) const {
  Vector padded = Vector::Zero(input_dim());
  padded.head(std::min<Eigen::Index>(amps.size(), input_dim())) = amps.head(std::min<Eigen::Index>(amps.size(), input_dim()));
  return (discarded_ * padded).squaredNorm();
}

PureState squeeze(const PureState& state, double xi, SqueezeAxis axis) {
  const SqueezeKernel kernel(xi, axis, state.policy());
  const Vector& in = state.amps();
  const double deficit = kernel.deficit(in) / state.norm2();
  if (deficit > state.policy().tail_tol) {
    throw TruncationError(fmt::format("squeeze xi={} loses {:.3e} beyond n_max={}", xi, deficit, state.n_max()),
                          deficit);
  }
  Vector out = kernel.apply(in);
  out *= std::sqrt(state.norm2()) / out.norm();
  return PureState(std::move(out), state.policy());
}

PureState squeezed_cat(const CatSpec& spec, const TruncationPolicy& policy) {
  if (spec.squeezing_db == 0.0) return ideal_cat(spec, policy);
  policy.validate();
  if (spec.squeezing_db > 0.0) {
    throw DomainError(fmt::format("squeezing_db is a level <= 0 (got {}); store magnitudes as negative dB",
                                  spec.squeezing_db));
  }
  const SqueezeKernel kernel(xi_from_db(spec.squeezing_db), spec.axis, policy);
  const Vector wide = cat_amplitudes(spec.beta, spec.parity, kernel.input_dim());
  const double deficit = kernel.deficit(wide);
  if (deficit > policy.tail_tol) {
    throw TruncationError(
        fmt::format("squeezed cat beta={} at {} dB loses {:.3e} beyond n_max={}", spec.beta, spec.squeezing_db,
                    deficit, policy.n_max),
        deficit);
  }
  Vector out = kernel.apply(wide);
  return PureState(out / out.norm(), policy);
}

}  // namespace catamp
