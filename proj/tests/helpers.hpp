#pragma once

#include <random>

#include "catamp/fock.hpp"
#include "catamp/logging.hpp"

namespace testing {

// Random normalized state supported on 0..support.
inline catamp::PureState random_state(std::mt19937& rng, int support, const catamp::TruncationPolicy& policy) {
  std::normal_distribution<double> g;
  catamp::Vector v = catamp::Vector::Zero(policy.dim());
  for (int n = 0; n <= support; ++n) v(n) = catamp::Complex(g(rng), g(rng));
  return catamp::PureState(v / v.norm(), policy);
}

// Random normalized density matrix of the given rank on 0..support.
inline catamp::DensityMatrix random_density(std::mt19937& rng, int support, int rank,
                                            const catamp::TruncationPolicy& policy) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  catamp::Matrix m = catamp::Matrix::Zero(policy.dim(), policy.dim());
  double total = 0.0;
  std::vector<double> w(rank);
  for (auto& x : w) total += (x = u(rng));
  for (int r = 0; r < rank; ++r) {
    const catamp::Vector v = random_state(rng, support, policy).amps();
    m += (w[r] / total) * v * v.adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return catamp::DensityMatrix(m, policy, true);
}

// Swallows library warnings for the lifetime of the guard.
struct QuietWarnings {
  QuietWarnings() { catamp::set_warning_sink([](const std::string&) {}); }
  ~QuietWarnings() { catamp::set_warning_sink({}); }
};

inline catamp::TruncationPolicy small(int n_max) {
  catamp::TruncationPolicy p;
  p.n_max = n_max;
  return p;
}

}  // namespace testing
