#include "catamp/errors.hpp"
#include "catamp/optics.hpp"
#include "catamp/states.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace catamp;

TEST_CASE("beam splitter amplitudes match the direct expansion for N <= 6") {
  for (double r2 : {0.0, 0.05, 0.3, 0.5, 0.77, 1.0}) {
    const BeamSplitter bs(r2);
    for (int n1 = 0; n1 <= 6; ++n1) {
      for (int n2 = 0; n1 + n2 <= 6; ++n2) {
        const auto expected = oracle::bs_expand(n1, n2, r2);
        for (int k = 0; k <= n1 + n2; ++k) {
          const auto it = expected.find({k, n1 + n2 - k});
          const double want = it == expected.end() ? 0.0 : it->second;
          CHECK(std::abs(bs_amplitude(n1, n2, k, bs) - want) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("bs_pure equals the oracle unitary on all N <= 6 inputs") {
  const auto pol = testing::small(6);
  const oracle::Mat u = oracle::bs_unitary(6, 0.3);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState a = testing::random_state(rng, 3, pol);
    const PureState b = testing::random_state(rng, 3, pol);
    const TwoModeState out = bs_pure(a, b, BeamSplitter(0.3));
    oracle::Vec in = oracle::Vec::Zero(49);
    for (int n1 = 0; n1 <= 3; ++n1) {
      for (int n2 = 0; n2 <= 3; ++n2) in(n1 * 7 + n2) = a[n1] * b[n2];
    }
    const oracle::Vec want = u * in;
    double err = 0.0;
    for (int p = 0; p <= 6; ++p) {
      for (int q = 0; q <= 6; ++q) err = std::max(err, std::abs(out(p, q) - want(p * 7 + q)));
    }
    CHECK(err < 1e-12);
    CHECK(std::abs(out.norm2() - 1.0) < 1e-10);
  }
}

TEST_CASE("beam splitter unitarity") {
  for (double r2 : {0.1, 0.5, 0.9}) {
    const oracle::Mat u = oracle::bs_unitary(8, r2);
    const int side = 9;
    oracle::Mat lib = oracle::Mat::Zero(side * side, side * side);
    const BeamSplitter bs(r2);
    for (int n1 = 0; n1 <= 8; ++n1) {
      for (int n2 = 0; n1 + n2 <= 8; ++n2) {
        for (int k = 0; k <= n1 + n2; ++k) lib(k * side + n1 + n2 - k, n1 * side + n2) = bs_amplitude(n1, n2, k, bs);
      }
    }
    CHECK((lib - u).norm() < 1e-12);
    // Unitary on the closed subspace of at most 8 photons.
    oracle::Mat block = oracle::Mat::Zero(45, 45);
    std::vector<int> idx;
    for (int n1 = 0; n1 <= 8; ++n1) {
      for (int n2 = 0; n1 + n2 <= 8; ++n2) idx.push_back(n1 * side + n2);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = lib(idx[i], idx[j]);
    }
    CHECK((block.adjoint() * block - oracle::Mat::Identity(45, 45)).norm() < 1e-10);
  }
}

TEST_CASE("single photon and Hong-Ou-Mandel") {
  const auto pol = testing::small(4);
  const BeamSplitter half(0.5);
  const TwoModeState one = bs_pure(PureState::fock(1, pol), PureState::fock(0, pol), half);
  CHECK(std::abs(one(1, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(one(0, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  const TwoModeState hom = bs_pure(PureState::fock(1, pol), PureState::fock(1, pol), half);
  CHECK(std::abs(hom(1, 1)) < 1e-15);
  CHECK(std::norm(hom(2, 0)) == doctest::Approx(0.5));
  const TwoModeState id = bs_pure(PureState::fock(2, pol), PureState::fock(1, pol), BeamSplitter(0.0));
  CHECK(std::abs(id(2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("herald_lk") {
  const PureHerald trivial = herald_lk(0.346, 0, 0, BeamSplitter(0.0));
  CHECK(trivial.probability == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(trivial.state.inner(squeezed_vacuum(0.346))) - 1.0) < 1e-12);

  const PureHerald kitten = herald_lk(0.346, 0, 1, BeamSplitter(0.05));
  for (int n = 0; n < kitten.state.dim(); n += 2) CHECK(kitten.state[n] == Complex(0.0));
  CHECK(kitten.probability > 0.0);
  CHECK_THROWS_AS(herald_lk(0.0, 0, 1, BeamSplitter(0.05)), ZeroHeraldError);
}

TEST_CASE("herald_lk equals the oracle at N_max = 6") {
  const auto pol = testing::small(6);
  const double xi = 0.1;
  const oracle::Vec sq = oracle::squeezed_vacuum(xi, 7);
  for (const auto& [l, k] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
    const double r2 = 0.2;
    const oracle::Mat u = oracle::bs_unitary(12, r2);
    oracle::Vec in = oracle::Vec::Zero(13 * 13);
    for (int n = 0; n <= 6; ++n) in(l * 13 + n) = sq(n);
    const oracle::Vec out = u * in;
    oracle::Vec cond = oracle::Vec::Zero(7);
    for (int n = 0; n <= 6; ++n) cond(n) = out(k * 13 + n);
    const PureHerald h = herald_lk(xi, l, k, BeamSplitter(r2), pol);
    const double p_oracle = cond.squaredNorm();
    CHECK(h.probability == doctest::Approx(p_oracle).epsilon(1e-10));
    CHECK(std::abs(std::abs(h.state.amps().dot(cond / cond.norm())) - 1.0) < 1e-10);
  }
}

TEST_CASE("herald support parity equals parity(l - k)") {
  testing::QuietWarnings quiet;
  for (int l = 0; l <= 3; ++l) {
    for (int k = 0; k <= 3; ++k) {
      const PureHerald h = herald_lk(0.5, l, k, BeamSplitter(0.3));
      const int wrong = (std::abs(l - k) + 1) % 2;
      for (int n = wrong; n < h.state.dim(); n += 2) CHECK(h.state[n] == Complex(0.0));
    }
  }
}

TEST_CASE("mixed herald of pure inputs equals the pure path") {
  testing::QuietWarnings quiet;
  const PureHerald a = herald_lk(0.68, 0, 1, BeamSplitter(0.11));
  const PureHerald b = herald_lk(0.68, 0, 1, BeamSplitter(0.01));
  const BeamSplitter bs3(0.505);
  const PureHerald pure = herald_pure(a.state, b.state, bs3, 1);
  const DensityMatrix mixed = bs_mixed_herald(purity_embed(a.state), purity_embed(b.state), bs3, 1);
  CHECK(mixed.trace() == doctest::Approx(pure.probability).epsilon(1e-10));
  CHECK((mixed.normalized().mat() - purity_embed(pure.state).mat()).norm() < 1e-10);

  const DensityMatrix vac = purity_embed(PureState::fock(0));
  const DensityMatrix v = bs_mixed_herald(vac, vac, bs3, 0);
  CHECK(v.trace() == doctest::Approx(1.0));
  CHECK(v(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("sum over herald outcomes is one") {
  std::mt19937 rng(5);
  const auto pol = testing::small(10);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix r1 = testing::random_density(rng, 4, 2, pol);
    const DensityMatrix r2 = testing::random_density(rng, 5, 3, pol);
    double total = 0.0;
    for (int k = 0; k <= 10; ++k) total += mixed_herald_matrix(r1, r2, BeamSplitter(0.4), k).trace().real();
    CHECK(std::abs(total - 1.0) < 1e-8);
  }
}

TEST_CASE("loss channel") {
  const auto pol = testing::small(8);
  const DensityMatrix one = purity_embed(PureState::fock(1, pol));
  const DensityMatrix out = apply_loss(one, LossChannel(0.2));
  CHECK(out(1, 1).real() == doctest::Approx(0.8));
  CHECK(out(0, 0).real() == doctest::Approx(0.2));
  CHECK((apply_loss(one, LossChannel(0.0)).mat() - one.mat()).norm() < 1e-15);

  const DensityMatrix coh = purity_embed(coherent(1.5));
  const DensityMatrix halved = apply_loss(coh, LossChannel(0.5));
  CHECK((halved.mat() - purity_embed(coherent(1.5 / std::sqrt(2.0))).mat()).norm() < 1e-9);

  std::mt19937 rng(9);
  const DensityMatrix rho = testing::random_density(rng, 8, 3, pol);
  const DensityMatrix lossy = apply_loss(rho, LossChannel(0.3));
  CHECK((lossy.mat() - oracle::loss_dilation(rho.mat(), 0.3)).norm() < 1e-12);
  CHECK(lossy.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_NOTHROW(lossy.check_physical());
  const DensityMatrix twice = apply_loss(apply_loss(rho, LossChannel(0.1)), LossChannel(0.25));
  const DensityMatrix once = apply_loss(rho, LossChannel(1.0 - 0.9 * 0.75));
  CHECK((twice.mat() - once.mat()).norm() < 1e-12);
  CHECK_THROWS_AS(LossChannel(1.0), ConfigError);
}
