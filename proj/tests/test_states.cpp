#include "catamp/errors.hpp"
#include "catamp/states.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace catamp;

TEST_CASE("coherent states") {
  CHECK(std::abs(coherent(0.0)[0]) == doctest::Approx(1.0));
  CHECK(coherent(2.0).mean_photon_number() == doctest::Approx(4.0).epsilon(1e-6));
  const PureState plus = coherent(2.0);
  Vector flipped = plus.amps();
  for (int n = 1; n < flipped.size(); n += 2) flipped(n) = -flipped(n);
  CHECK(std::abs(plus.amps().dot(flipped)) == doctest::Approx(std::exp(-8.0)).epsilon(1e-9));
  CHECK(std::exp(-8.0) == doctest::Approx(3.355e-4).epsilon(1e-3));
  CHECK_THROWS_AS(coherent(4.0), TruncationError);
}

TEST_CASE("coherent overlap closed form over beta in [0, 2.5]") {
  for (double a = 0.0; a <= 2.5; a += 0.25) {
    for (double b = 0.0; b <= 2.5; b += 0.25) {
      const double overlap = std::abs(coherent(a).inner(coherent(b)));
      CHECK(std::abs(overlap - std::exp(-(a - b) * (a - b) / 2.0)) < 1e-9);
    }
  }
  CHECK((coherent(1.7).amps() - oracle::coherent(1.7, 41)).norm() < 1e-12);
}

TEST_CASE("squeezed vacuum") {
  CHECK(std::abs(squeezed_vacuum(0.0)[0]) == doctest::Approx(1.0));
  CHECK(squeezing_db(0.346) == doctest::Approx(-3.005).epsilon(1e-3));
  CHECK(squeezing_db(0.68) == doctest::Approx(-5.906).epsilon(1e-3));
  CHECK(xi_from_db(squeezing_db(0.68)) == doctest::Approx(0.68));
  for (double xi : {0.1, 0.346, 0.68, 0.8}) {
    const PureState s = squeezed_vacuum(xi);
    CHECK((s.amps() - oracle::squeezed_vacuum(xi, 41)).norm() < 1e-9);
    CHECK(std::abs(s.norm2() - 1.0) < 1e-8);
    CHECK(s.mean_photon_number() == doctest::Approx(std::pow(std::sinh(xi), 2)).epsilon(1e-5));
    for (int n = 1; n < s.dim(); n += 2) CHECK(s[n] == Complex(0.0));
  }
  CHECK_THROWS_AS(squeezed_vacuum(-0.1), DomainError);
  CHECK_THROWS_AS(squeezed_vacuum(1.2), TruncationError);
}

TEST_CASE("ideal cats") {
  const PureState even0 = ideal_cat({0.0, Parity::even});
  CHECK(std::abs(even0[0]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ideal_cat({0.0, Parity::odd}), DomainError);
  const PureState odd1 = ideal_cat({1.0, Parity::odd});
  for (int n = 0; n < odd1.dim(); n += 2) CHECK(odd1[n] == Complex(0.0));
  // N+ for beta = 2 fixes the vacuum amplitude 2 N+ e^{-2}.
  const double n_plus = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-8.0)));
  CHECK(ideal_cat({2.0, Parity::even})[0].real() == doctest::Approx(2.0 * n_plus * std::exp(-2.0)).epsilon(1e-12));
  for (double b : {0.3, 1.0, 2.0, 2.5}) {
    CHECK(std::abs(ideal_cat({b, Parity::odd}).inner(ideal_cat({b, Parity::even}))) < 1e-12);
  }
  // Independent construction from two coherent states.
  const oracle::Vec cat = oracle::coherent(1.3, 41) - oracle::coherent(-1.3, 41);
  CHECK(std::abs(std::abs(ideal_cat({1.3, Parity::odd}).amps().dot(cat / cat.norm())) - 1.0) < 1e-12);
}

TEST_CASE("squeeze operator") {
  const auto vac = PureState::fock(0);
  for (double xi : {0.2, 0.346, 0.5}) {
    const PureState s = squeeze(vac, xi, SqueezeAxis::momentum);
    CHECK(std::abs(std::abs(s.inner(squeezed_vacuum(xi))) - 1.0) < 1e-10);
    const PureState q = squeeze(vac, xi, SqueezeAxis::position);
    CHECK((q.amps() - oracle::squeezed_vacuum(xi, 41, -1.0)).norm() < 1e-9);
  }
  CatSpec spec{1.5, Parity::odd, 0.0};
  CHECK((squeezed_cat(spec).amps() - ideal_cat(spec).amps()).norm() < 1e-14);
  spec.squeezing_db = -1.39;
  const PureState sq = squeezed_cat(spec);
  CHECK(sq.norm2() == doctest::Approx(1.0));
  for (int n = 0; n < sq.dim(); n += 2) CHECK(std::abs(sq[n]) < 1e-14);
  spec.squeezing_db = 1.0;
  CHECK_THROWS_AS(squeezed_cat(spec), DomainError);
}

TEST_CASE("position squeezing narrows x") {
  // <x^2> with x = (a + a^dag)/sqrt(2) is e^{-2 xi}/2 for position squeezing.
  const PureState s = squeeze(PureState::fock(0), 0.3, SqueezeAxis::position);
  const int dim = s.dim();
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix x = (a + a.adjoint()) / std::sqrt(2.0);
  CHECK(s.amps().dot(x * x * s.amps()).real() == doctest::Approx(std::exp(-0.6) / 2.0).epsilon(1e-9));
  const PureState m = squeeze(PureState::fock(0), 0.3, SqueezeAxis::momentum);
  CHECK(m.amps().dot(x * x * m.amps()).real() == doctest::Approx(std::exp(0.6) / 2.0).epsilon(1e-9));
}
