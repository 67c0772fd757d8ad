#pragma once

#include <string>

#include "catamp/fock.hpp"

namespace catamp {

enum class Parity { even, odd };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);
/// Parity of an integer photon-number difference.
Parity parity_of(int n);

/// Quadrature whose variance a squeeze operation reduces. With
/// x = (a + a^dagger)/sqrt(2), a cat with real beta is displaced along x.
enum class SqueezeAxis { position, momentum };

std::string to_string(SqueezeAxis a);
SqueezeAxis squeeze_axis_from_string(const std::string& s);

/// Squeezing level in dB for parameter xi: 10 log10(exp(-2 xi)), so
/// positive xi gives a negative level (xi = 0.346 -> -3.0 dB).
double squeezing_db(double xi);
/// Inverse of squeezing_db. Accepts either sign; the magnitude is used.
double xi_from_db(double db);

struct SqueezeSpec {
  double xi = 0.0;

  double db() const { return squeezing_db(xi); }
  static SqueezeSpec from_db(double db) { return {xi_from_db(db)}; }
};

/// N_+-(|beta> +- |-beta>), optionally followed by a squeeze.
/// squeezing_db is a level in the same convention as SqueezeSpec::db(),
/// i.e. <= 0; a magnitude such as "squeezed by 1.39 dB" is stored as -1.39.
struct CatSpec {
  double beta = 0.0;
  Parity parity = Parity::odd;
  double squeezing_db = 0.0;
  SqueezeAxis axis = SqueezeAxis::position;
};

/// e^{-beta^2/2} beta^n / sqrt(n!). Requires beta^2 <= n_max / 4.
PureState coherent(double beta, const TruncationPolicy& policy = {});

/// Even-only amplitudes alpha_2n = tanh(xi)^n sqrt((2n)!) / (2^n n! sqrt(cosh xi)).
/// Squeezed along the momentum quadrature for xi > 0.
PureState squeezed_vacuum(double xi, const TruncationPolicy& policy = {});

/// Parity-pure ideal cat. beta = 0 with odd parity is a DomainError.
PureState ideal_cat(const CatSpec& spec, const TruncationPolicy& policy = {});

/// ideal_cat followed by a squeeze of |squeezing_db| along spec.axis.
/// squeezing_db == 0 reduces to ideal_cat.
PureState squeezed_cat(const CatSpec& spec, const TruncationPolicy& policy = {});

/// Single-mode squeeze of magnitude xi >= 0 along `axis`, evaluated in an
/// enlarged Fock space and truncated back. Throws TruncationError when the
/// discarded norm exceeds policy.tail_tol.
PureState squeeze(const PureState& state, double xi, SqueezeAxis axis);

/// Precomputed Fock-basis squeeze kernel, rows 0..n_max, columns over an
/// enlarged basis. Reusable across many input vectors.
class SqueezeKernel {
 public:
  SqueezeKernel(double xi, SqueezeAxis axis, const TruncationPolicy& policy);

  /// Squeezed amplitudes of `amps` (given on the enlarged basis of size
  /// input_dim(); shorter vectors are zero padded). Not renormalized.
  Vector apply(const Vector& amps) const;
  int input_dim() const { return static_cast<int>(kernel_.cols()); }
  /// Norm lost to truncation when squeezing `amps`.
  double deficit(const Vector& amps) const;

 private:
  Matrix kernel_;
  Matrix discarded_;
};

/// Unnormalized-reference helper used by fits: cat amplitudes on an
/// arbitrary basis size without the truncation preconditions.
Vector cat_amplitudes(double beta, Parity parity, int dim);

}  // namespace catamp
