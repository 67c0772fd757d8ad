#include "catamp/comb.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "catamp/errors.hpp"
#include "catamp/logging.hpp"

namespace catamp {
namespace {

constexpr double kPhaseTol = 1e-12;

}  // namespace

std::string to_string(SidebandMode m) {
  switch (m) {
    case SidebandMode::cos:
      return "cos";
    case SidebandMode::sin:
      return "sin";
    case SidebandMode::plus:
      return "plus";
    case SidebandMode::minus:
      return "minus";
  }
  return "?";
}

void CombConfig::validate() const {
  if (!(omega > 0.0)) throw ConfigError(fmt::format("comb.omega = {} must be positive", omega));
  if (!(fbs3_reflect >= 0.0 && fbs3_reflect <= 1.0)) {
    throw ConfigError(fmt::format("comb.fbs3_reflect = {} must lie in [0, 1]", fbs3_reflect));
  }
  if (std::abs(eom1.theta) > kPhaseTol || std::abs(eom2.theta + std::numbers::pi / 2) > kPhaseTol) {
    throw ConfigError(fmt::format("unsupported phase pair (theta1 = {}, theta2 = {}); expected (0, -pi/2)",
                                  eom1.theta, eom2.theta));
  }
}

double quantize_reflectance(double r2) { return std::stod(fmt::format("{:.15g}", r2)); }

BeamSplitter eom_to_bs(const EomSetting& eom) {
  if (!(eom.depth >= 0.0)) throw ConfigError(fmt::format("modulation depth {} must be >= 0", eom.depth));
  const double r2 = quantize_reflectance(eom.depth * eom.depth / 2.0);
  if (r2 > 1.0) throw ConfigError(fmt::format("modulation depth {} gives reflectance {} > 1", eom.depth, r2));
  if (eom.depth > kWeakModulation) {
    warn(fmt::format("modulation depth {} exceeds the weak-modulation regime ({})", eom.depth, kWeakModulation));
  }
  return BeamSplitter(r2);
}

double depth_for_reflectivity(double r2) {
  if (!(r2 >= 0.0 && r2 <= 1.0)) throw ConfigError(fmt::format("reflectance {} must lie in [0, 1]", r2));
  const double target = quantize_reflectance(r2);
  const double d = std::sqrt(2.0 * target);
  if (quantize_reflectance(d * d / 2.0) != target) {
    throw NumericError(fmt::format("no modulation depth reproduces reflectance {}", r2));
  }
  return d;
}

SchemeConfig comb_to_scheme(const CombConfig& comb, double xi, int k1, int k2, int k,
                            const TruncationPolicy& policy) {
  comb.validate();
  SchemeConfig cfg;
  cfg.xi1 = xi;
  cfg.xi2 = xi;
  cfg.l1 = 0;
  cfg.l2 = 0;
  cfg.k1 = k1;
  cfg.k2 = k2;
  cfg.k = k;
  cfg.r2_1 = eom_to_bs(comb.eom1).r2();
  cfg.r2_2 = eom_to_bs(comb.eom2).r2();
  cfg.r2_3 = comb.fbs3_reflect;
  cfg.policy = policy;
  cfg.validate();
  return cfg;
}

std::pair<Complex, Complex> to_quadrature(Complex plus, Complex minus) {
  const double s = std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  return {(plus + minus) / s, (plus - minus) / (s * i)};
}

std::pair<Complex, Complex> to_sidebands(Complex cos, Complex sin) {
  const double s = std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  return {(cos + i * sin) / s, (cos - i * sin) / s};
}

std::pair<Complex, Complex> basis_roundtrip(Complex plus, Complex minus) {
  const auto [c, s] = to_quadrature(plus, minus);
  return to_sidebands(c, s);
}

}  // namespace catamp
