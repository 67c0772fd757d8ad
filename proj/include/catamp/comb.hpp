#pragma once

#include <string>
#include <utility>

#include "catamp/numeric.hpp"
#include "catamp/optics.hpp"
#include "catamp/scheme.hpp"

namespace catamp {

/// Weak phase modulation at offset omega: depth beta_mod and phase theta.
struct EomSetting {
  double depth = 0.0;
  double theta = 0.0;
};

struct CombConfig {
  double omega = 1.0;
  EomSetting eom1;
  EomSetting eom2{0.0, -1.5707963267948966};
  /// Effective reflected fraction of the sideband filter before the final herald.
  double fbs3_reflect = 0.5;

  /// Throws ConfigError.
  void validate() const;
};

enum class SidebandMode { cos, sin, plus, minus };

std::string to_string(SidebandMode m);

/// Depth above which higher sidebands stop being negligible; warns only.
inline constexpr double kWeakModulation = 0.1;

/// Reflectances are carried to 15 significant digits, so decimal values
/// survive depth -> R^2 -> depth round trips exactly.
double quantize_reflectance(double r2);

/// Tap with T^2 = 1 - depth^2 / 2. Throws ConfigError for negative depth or
/// depth^2 / 2 > 1.
BeamSplitter eom_to_bs(const EomSetting& eom);

/// Depth whose eom_to_bs reflectance equals quantize_reflectance(r2).
double depth_for_reflectivity(double r2);

/// SchemeConfig for l1 = l2 = 0 with the given herald counts. Requires
/// theta1 = 0 and theta2 = -pi/2 (cos/sin selection).
SchemeConfig comb_to_scheme(const CombConfig& comb, double xi, int k1 = 1, int k2 = 1, int k = 1,
                            const TruncationPolicy& policy = {});

/// Mode amplitudes at +omega and -omega to (cos, sin) sideband amplitudes.
std::pair<Complex, Complex> to_quadrature(Complex plus, Complex minus);
/// Inverse of to_quadrature.
std::pair<Complex, Complex> to_sidebands(Complex cos, Complex sin);

/// to_sidebands(to_quadrature(plus, minus)).
std::pair<Complex, Complex> basis_roundtrip(Complex plus, Complex minus);

}  // namespace catamp
