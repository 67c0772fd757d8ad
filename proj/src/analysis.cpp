#include "catamp/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catamp/errors.hpp"

namespace catamp {
namespace {

constexpr double kRankCut = 1e-13;

void require_normalized(const DensityMatrix& rho, const char* what) {
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw DomainError(fmt::format("{}: density matrix trace {} is not 1", what, rho.trace()));
  }
}

// Columns of A with rho = A A^dag, keeping eigenvalues above the rank cut.
Matrix square_root_factor(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.mat());
  const Eigen::VectorXd& ev = solver.eigenvalues();
  if (ev.minCoeff() < -1e-9) {
    throw NumericError(fmt::format("fidelity input not PSD (min eigenvalue {:.3e})", ev.minCoeff()));
  }
  const double cut = kRankCut * std::max(1.0, ev.maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) keep.push_back(i);
  }
  Matrix a(rho.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    a.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(keep[c]) * std::sqrt(ev(keep[c]));
  }
  return a;
}

// Normalized cat references, optionally squeezed, on the state's basis.
class CatReference {
 public:
  CatReference(Parity parity, double squeezing_db, SqueezeAxis axis, const TruncationPolicy& policy)
      : parity_(parity), dim_(policy.dim()) {
    if (squeezing_db != 0.0) kernel_.emplace(xi_from_db(squeezing_db), axis, policy);
  }

  Vector at(double beta) const {
    if (!kernel_) return cat_amplitudes(beta, parity_, dim_);
    Vector v = kernel_->apply(cat_amplitudes(beta, parity_, kernel_->input_dim()));
    return v / v.norm();
  }

  double fidelity(const Matrix& rho, double beta) const {
    const Vector c = at(beta);
    return c.dot(rho * c).real();
  }

  double fidelity(const Vector& psi, double beta) const { return std::norm(at(beta).dot(psi)); }

 private:
  Parity parity_;
  int dim_;
  std::optional<SqueezeKernel> kernel_;
};

std::vector<double> beta_grid(const BetaScan& scan, Parity parity) {
  if (!(scan.step > 0.0) || scan.hi < scan.lo || scan.lo < 0.0) {
    throw ConfigError(fmt::format("empty beta scan [{}, {}] step {}", scan.lo, scan.hi, scan.step));
  }
  std::vector<double> grid = linear_grid(scan.lo, scan.hi, scan.step);
  // An odd cat at beta = 0 is undefined.
  if (parity == Parity::odd) {
    grid.erase(std::remove_if(grid.begin(), grid.end(), [](double b) { return b <= 0.0; }), grid.end());
  }
  if (grid.empty()) throw ConfigError("beta scan contains no admissible points");
  return grid;
}

template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// State is either a density matrix or a normalized amplitude vector.
template <typename State>
CatFit fit_fixed(const State& m, const TruncationPolicy& policy, Parity parity, const CatFitOptions& options,
                 double squeezing_db) {
  const CatReference ref(parity, squeezing_db, options.axis, policy);
  const std::vector<double> grid = beta_grid(options.scan, parity);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = ref.fidelity(m, grid[i]);

  CatFit fit;
  fit.f_target = options.f_target;
  fit.squeezing_db = squeezing_db;
  fit.axis = options.axis;
  fit.parity = parity;
  fit.scan = options.scan;

  const auto peak = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  const double lo = grid[peak > 0 ? peak - 1 : 0];
  const double hi = grid[std::min(peak + 1, grid.size() - 1)];
  auto fid = [&](double b) { return ref.fidelity(m, b); };
  double beta_star = grid[peak];
  double f_star = f[peak];
  if (hi > lo) {
    const double refined = golden_section_max(fid, lo, hi, 1e-7);
    const double f_refined = fid(refined);
    if (f_refined > f_star) {
      beta_star = refined;
      f_star = f_refined;
    }
  }
  fit.beta_star = beta_star;
  fit.f_star = std::clamp(f_star, 0.0, 1.0);
  fit.degenerate = peak == 0;
  const double step = options.scan.step;
  const double left = std::max(grid.front(), beta_star - step);
  const double right = std::min(grid.back(), beta_star + step);
  fit.peak_verified = fid(left) <= f_star + 1e-12 && fid(right) <= f_star + 1e-12;

  // Last grid point at or above the target, then bisect the downward crossing.
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f[i] >= options.f_target) last = i;
  }
  if (last) {
    if (*last + 1 == grid.size()) {
      fit.beta_max = grid.back();
    } else {
      double a = grid[*last];
      double b = grid[*last + 1];
      for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        const double mid = 0.5 * (a + b);
        (fid(mid) >= options.f_target ? a : b) = mid;
      }
      fit.beta_max = a;
    }
  }
  return fit;
}

// Higher is better: beta_max when defined, otherwise rank by F*.
bool better_squeezed_fit(const CatFit& a, const CatFit& b) {
  if (a.beta_max && b.beta_max) return *a.beta_max > *b.beta_max;
  if (a.beta_max != b.beta_max) return a.beta_max.has_value();
  return a.f_star > b.f_star;
}

}  // namespace

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  require_normalized(rho, "fidelity_pure");
  if (std::abs(psi.norm2() - 1.0) > 1e-9) throw DomainError("fidelity_pure: reference state is not normalized");
  if (psi.n_max() != rho.n_max()) throw ConfigError("fidelity_pure: truncation mismatch");
  const double f = psi.amps().dot(rho.mat() * psi.amps()).real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_mixed(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_normalized(rho1, "fidelity_mixed");
  require_normalized(rho2, "fidelity_mixed");
  if (rho1.n_max() != rho2.n_max()) throw ConfigError("fidelity_mixed: truncation mismatch");
  const Matrix a1 = square_root_factor(rho1);
  const Matrix a2 = square_root_factor(rho2);
  if (a1.cols() == 0 || a2.cols() == 0) return 0.0;
  const Matrix overlap = a1.adjoint() * a2;
  Eigen::JacobiSVD<Matrix> svd(overlap);
  const double nuclear = svd.singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

std::vector<double> photon_distribution(const DensityMatrix& rho) {
  const double tr = rho.trace();
  std::vector<double> p(rho.dim());
  for (int n = 0; n < rho.dim(); ++n) p[n] = rho(n, n).real() / tr;
  return p;
}

double mean_photon_number(const DensityMatrix& rho) {
  const std::vector<double> p = photon_distribution(rho);
  double acc = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) acc += static_cast<double>(n) * p[n];
  return acc;
}

double parity_expectation(const DensityMatrix& rho) {
  const std::vector<double> p = photon_distribution(rho);
  double acc = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) acc += (n % 2 == 0 ? 1.0 : -1.0) * p[n];
  return acc;
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
  const int dim = rho.dim();
  const double r2 = x * x + p * p;
  // alpha = (x + i p)/sqrt(2); Laguerre argument 4|alpha|^2 = 2 r2.
  const double y = 2.0 * r2;
  const double theta = std::atan2(p, x);
  const double log_two_alpha = r2 > 0.0 ? 0.5 * std::log(2.0 * r2) : -std::numeric_limits<double>::infinity();
  const Matrix& m = rho.mat();
  double acc = 0.0;
  std::vector<double> lag(dim);
  for (int k = 0; k < dim; ++k) {
    if (k > 0 && r2 == 0.0) break;
    // L_j^{(k)}(y), j = 0..dim-1-k, by upward recurrence.
    const int top = dim - k;
    lag[0] = 1.0;
    if (top > 1) lag[1] = 1.0 + k - y;
    for (int j = 1; j + 1 < top; ++j) {
      lag[j + 1] = ((2.0 * j + 1.0 + k - y) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
    }
    for (int j = 0; j < top; ++j) {
      const int n = j + k;
      const double log_mag =
          -r2 + (k > 0 ? k * log_two_alpha : 0.0) + 0.5 * (log_factorial(j) - log_factorial(n));
      const double mag = std::exp(log_mag) * lag[j] * (j % 2 == 0 ? 1.0 : -1.0);
      if (k == 0) {
        acc += m(j, j).real() * mag;
      } else {
        // rho_{jn} couples to (2 alpha)^{n-j}; its Hermitian partner gives the conjugate.
        const Complex phase = std::polar(1.0, k * theta);
        acc += 2.0 * (m(j, n) * phase).real() * mag;
      }
    }
  }
  return acc / (std::numbers::pi * rho.trace());
}

double WignerGrid::integral() const {
  if (x.size() < 2 || p.size() < 2) return 0.0;
  const double dx = x[1] - x[0];
  const double dp = p[1] - p[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wx = (i == 0 || i + 1 == x.size()) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double wp = (j == 0 || j + 1 == p.size()) ? 0.5 : 1.0;
      acc += wx * wp * value(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return acc * dx * dp;
}

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
  if (spec.points < 21) throw ConfigError(fmt::format("wigner grid of {} points per axis is too coarse", spec.points));
  if (!(spec.x_max > 0.0 && spec.p_max > 0.0)) throw ConfigError("wigner grid extent must be positive");
  WignerGrid grid;
  grid.spec = spec;
  grid.x.resize(spec.points);
  grid.p.resize(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    grid.x[i] = -spec.x_max + 2.0 * spec.x_max * t;
    grid.p[i] = -spec.p_max + 2.0 * spec.p_max * t;
  }
  grid.value.resize(spec.points, spec.points);
  for (int i = 0; i < spec.points; ++i) {
    for (int j = 0; j < spec.points; ++j) grid.value(i, j) = wigner_at(rho, grid.x[i], grid.p[j]);
  }
  return grid;
}

std::vector<std::pair<double, double>> fidelity_curve(const DensityMatrix& rho, Parity parity,
                                                      const CatFitOptions& options) {
  require_normalized(rho, "fidelity_curve");
  const CatReference ref(parity, options.squeezing_db, options.axis, rho.policy());
  std::vector<std::pair<double, double>> curve;
  for (double b : beta_grid(options.scan, parity)) curve.emplace_back(b, ref.fidelity(rho.mat(), b));
  return curve;
}

namespace {

template <typename State>
CatFit fit_any(const State& m, const TruncationPolicy& policy, Parity parity, const CatFitOptions& options) {
  if (options.squeezing_db > 0.0) throw ConfigError("cat fit squeezing level must be <= 0 dB");
  if (!options.squeeze_scan) return fit_fixed(m, policy, parity, options, options.squeezing_db);

  const SqueezeScan& sq = *options.squeeze_scan;
  if (!(sq.db_step > 0.0) || sq.db_hi < sq.db_lo || sq.db_lo < 0.0) {
    throw ConfigError(fmt::format("empty squeezing scan [{}, {}] step {}", sq.db_lo, sq.db_hi, sq.db_step));
  }
  CatFitOptions fixed = options;
  fixed.axis = sq.axis;
  fixed.squeeze_scan.reset();
  auto fit_at = [&](double magnitude) { return fit_fixed(m, policy, parity, fixed, -magnitude); };

  double best_db = sq.db_lo;
  CatFit best = fit_at(best_db);
  for (double db : linear_grid(sq.db_lo, sq.db_hi, sq.db_step)) {
    CatFit f = fit_at(db);
    if (better_squeezed_fit(f, best)) {
      best = f;
      best_db = db;
    }
  }
  // Local refinement on a grid ten times finer.
  const double fine = sq.db_step / 10.0;
  for (int i = -10; i <= 10; ++i) {
    const double db = best_db + i * fine;
    if (i == 0 || db < sq.db_lo || db > sq.db_hi) continue;
    CatFit f = fit_at(db);
    if (better_squeezed_fit(f, best)) best = f;
  }
  return best;
}

}  // namespace

CatFit cat_fit(const DensityMatrix& rho, Parity parity, const CatFitOptions& options) {
  require_normalized(rho, "cat_fit");
  return fit_any(rho.mat(), rho.policy(), parity, options);
}

CatFit cat_fit(const PureState& psi, Parity parity, const CatFitOptions& options) {
  if (std::abs(psi.norm2() - 1.0) > 1e-9) throw DomainError("cat_fit: state is not normalized");
  return fit_any(psi.amps(), psi.policy(), parity, options);
}

}  // namespace catamp
