#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "catamp/fock.hpp"
#include "catamp/states.hpp"

namespace catamp {

/// <psi|rho|psi>. Both inputs must be normalized.
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, evaluated as the
/// squared nuclear norm of A1^dag A2 with rho = A A^dag. Symmetric, and
/// exact on rank-1 inputs. Throws NumericError on a non-PSD input.
double fidelity_mixed(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Diagonal rho_nn of a normalized state.
std::vector<double> photon_distribution(const DensityMatrix& rho);

double mean_photon_number(const DensityMatrix& rho);

/// <(-1)^n>
double parity_expectation(const DensityMatrix& rho);

struct WignerGridSpec {
  double x_max = 6.0;
  double p_max = 6.0;
  int points = 121;
};

/// W(x, p) with x = (a + a^dag)/sqrt(2), hbar = 1, normalized so that
/// the integral over dx dp is 1. value(i, j) is at (x[i], p[j]).
struct WignerGrid {
  std::vector<double> x;
  std::vector<double> p;
  Eigen::MatrixXd value;
  WignerGridSpec spec;

  /// Trapezoidal integral over the grid.
  double integral() const;
  double min() const { return value.minCoeff(); }
  double max() const { return value.maxCoeff(); }
};

double wigner_at(const DensityMatrix& rho, double x, double p);

/// Throws ConfigError for grids with fewer than 21 points per axis.
WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec = {});

struct BetaScan {
  double lo = 0.0;
  double hi = 3.5;
  double step = 0.005;
};

/// Squeezing magnitudes (dB, >= 0) searched for a squeezed-cat reference.
struct SqueezeScan {
  double db_lo = 0.0;
  double db_hi = 3.0;
  double db_step = 0.05;
  SqueezeAxis axis = SqueezeAxis::position;
};

struct CatFitOptions {
  BetaScan scan;
  double f_target = 0.99;
  /// Fixed reference squeezing level (<= 0 dB). Ignored when squeeze_scan is set.
  double squeezing_db = 0.0;
  SqueezeAxis axis = SqueezeAxis::position;
  /// When set, the reference squeezing is chosen to maximize beta_max.
  std::optional<SqueezeScan> squeeze_scan;
};

/// Best match of a state to the (optionally squeezed) cat family.
struct CatFit {
  double beta_star = 0.0;
  double f_star = 0.0;
  /// Largest beta with F >= f_target; empty if the curve never reaches it.
  std::optional<double> beta_max;
  double f_target = 0.99;
  /// Reference squeezing level in dB (<= 0; 0 for an ideal-cat fit).
  double squeezing_db = 0.0;
  SqueezeAxis axis = SqueezeAxis::position;
  Parity parity = Parity::odd;
  BetaScan scan;
  /// F(beta* +- step) <= F* was checked.
  bool peak_verified = false;
  /// beta* sits on the lower scan edge (vacuum-dominated state).
  bool degenerate = false;
};

/// Scans F(beta) = <cat_beta|rho|cat_beta> on the grid, refines the peak by
/// golden section and the F = f_target crossing by bisection.
CatFit cat_fit(const DensityMatrix& rho, Parity parity, const CatFitOptions& options = {});

/// Same fit for a normalized pure state, using |<cat|psi>|^2.
CatFit cat_fit(const PureState& psi, Parity parity, const CatFitOptions& options = {});

/// (beta, F) pairs on the scan grid for the given reference squeezing.
std::vector<std::pair<double, double>> fidelity_curve(const DensityMatrix& rho, Parity parity,
                                                      const CatFitOptions& options = {});

}  // namespace catamp
