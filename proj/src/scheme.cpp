#include "catamp/scheme.hpp"

#include <fmt/format.h>

#include "catamp/errors.hpp"
#include "catamp/parallel.hpp"
#include "catamp/states.hpp"

namespace catamp {
namespace {

void check_unit(double v, const char* name, bool closed_top = true) {
  const bool ok = closed_top ? (v >= 0.0 && v <= 1.0) : (v >= 0.0 && v < 1.0);
  if (!ok) throw ConfigError(fmt::format("scheme.{} = {} is out of range", name, v));
}

void check_count(int v, const char* name, int n_max) {
  if (v < 0 || v > n_max) throw ConfigError(fmt::format("scheme.{} = {} must lie in 0..{}", name, v, n_max));
}

void check_eta(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) throw ConfigError(fmt::format("scheme.{} = {} must lie in (0, 1]", name, v));
}

CatFitOptions kitten_fit_options(const RunOptions& options) {
  // Kittens are always compared with unsqueezed odd cats.
  CatFitOptions o = options.fit;
  o.squeezing_db = 0.0;
  o.squeeze_scan.reset();
  return o;
}

struct MixedKitten {
  DensityMatrix state;
  double probability;
};

MixedKitten imperfect_kitten(double xi, double loss, int l, int k, double r2, double eta,
                             const TruncationPolicy& policy) {
  const DensityMatrix added = purity_embed(PureState::fock(l, policy));
  const DensityMatrix source = apply_loss(purity_embed(squeezed_vacuum(xi, policy)), LossChannel(loss));
  const BeamSplitter tap(r2);
  if (eta == 1.0) {
    const DensityMatrix heralded = bs_mixed_herald(added, source, tap, k);
    return {heralded.normalized(), heralded.trace()};
  }
  const DetectorSpec det(eta);
  const HeraldEnsemble ensemble = build_ensemble(added, source, tap, k);
  const double p = observation_probability(k, ensemble, det);
  return {heralded_mixture(k, ensemble, det), p};
}

void finish(SchemeResult& r) {
  r.overall_product = 1.0;
  for (const auto& s : r.stages) r.overall_product *= s.probability;
  r.final_stage = r.stages.back().probability;
}

}  // namespace

void SchemeConfig::validate() const {
  policy.validate();
  if (xi1 < 0.0) throw ConfigError(fmt::format("scheme.xi1 = {} must be >= 0", xi1));
  if (xi2 < 0.0) throw ConfigError(fmt::format("scheme.xi2 = {} must be >= 0", xi2));
  check_unit(loss1, "loss1", false);
  check_unit(loss2, "loss2", false);
  check_unit(r2_1, "r2_1");
  check_unit(r2_2, "r2_2");
  check_unit(r2_3, "r2_3");
  check_count(l1, "l1", policy.n_max);
  check_count(k1, "k1", policy.n_max);
  check_count(l2, "l2", policy.n_max);
  check_count(k2, "k2", policy.n_max);
  check_count(k, "k", policy.n_max);
  check_eta(eta1, "eta1");
  check_eta(eta2, "eta2");
  check_eta(eta3, "eta3");
}

Parity SchemeConfig::output_parity() const { return parity_of(std::abs(l1 - k1 + l2 - k2 - k)); }

bool SchemeConfig::is_ideal() const {
  return loss1 == 0.0 && loss2 == 0.0 && eta1 == 1.0 && eta2 == 1.0 && eta3 == 1.0;
}

SchemeResult run_single_stage(double xi, int l, int k, double r2, const TruncationPolicy& policy,
                              const RunOptions& options) {
  policy.validate();
  PureHerald h = herald_lk(xi, l, k, BeamSplitter(r2), policy);
  SchemeConfig cfg;
  cfg.xi1 = xi;
  cfg.l1 = l;
  cfg.k1 = k;
  cfg.r2_1 = r2;
  cfg.policy = policy;
  DensityMatrix rho = purity_embed(h.state);
  const Parity parity = options.fit_parity.value_or(parity_of(std::abs(l - k)));
  SchemeResult r{cfg, rho, h.state, {}, {{"tap1", h.probability}}, 0.0, 0.0, cat_fit(rho, parity, options.fit), {}};
  finish(r);
  return r;
}

PureHerald amplifier_state(const SchemeConfig& cfg) {
  const PureHerald a = herald_lk(cfg.xi1, cfg.l1, cfg.k1, BeamSplitter(cfg.r2_1), cfg.policy);
  const PureHerald b = herald_lk(cfg.xi2, cfg.l2, cfg.k2, BeamSplitter(cfg.r2_2), cfg.policy);
  return herald_pure(a.state, b.state, BeamSplitter(cfg.r2_3), cfg.k);
}

SchemeResult run_amplifier_ideal(const SchemeConfig& cfg, const RunOptions& options) {
  cfg.validate();
  if (!cfg.is_ideal()) throw ConfigError("run_amplifier_ideal requires zero loss and unit detector efficiencies");
  const PureHerald a = herald_lk(cfg.xi1, cfg.l1, cfg.k1, BeamSplitter(cfg.r2_1), cfg.policy);
  const PureHerald b = herald_lk(cfg.xi2, cfg.l2, cfg.k2, BeamSplitter(cfg.r2_2), cfg.policy);
  const PureHerald out = herald_pure(a.state, b.state, BeamSplitter(cfg.r2_3), cfg.k);

  const DensityMatrix rho = purity_embed(out.state);
  const Parity parity = options.fit_parity.value_or(cfg.output_parity());
  SchemeResult r{cfg,
                 rho,
                 out.state,
                 {purity_embed(a.state), purity_embed(b.state)},
                 {{"tap1", a.probability}, {"tap2", b.probability}, {"bs3", out.probability}},
                 0.0,
                 0.0,
                 cat_fit(rho, parity, options.fit),
                 {}};
  const CatFitOptions kopt = kitten_fit_options(options);
  for (const auto& kitten : r.kittens) r.kitten_fits.push_back(cat_fit(kitten, Parity::odd, kopt));
  finish(r);
  return r;
}

SchemeResult run_amplifier_imperfect(const SchemeConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const MixedKitten a = imperfect_kitten(cfg.xi1, cfg.loss1, cfg.l1, cfg.k1, cfg.r2_1, cfg.eta1, cfg.policy);
  const MixedKitten b = imperfect_kitten(cfg.xi2, cfg.loss2, cfg.l2, cfg.k2, cfg.r2_2, cfg.eta2, cfg.policy);
  const BeamSplitter bs3(cfg.r2_3);

  std::optional<DensityMatrix> out;
  double p_final = 0.0;
  if (cfg.eta3 == 1.0) {
    const DensityMatrix heralded = bs_mixed_herald(a.state, b.state, bs3, cfg.k);
    p_final = heralded.trace();
    out = heralded.normalized();
  } else {
    const DetectorSpec det(cfg.eta3);
    const HeraldEnsemble ensemble = build_ensemble(a.state, b.state, bs3, cfg.k);
    p_final = observation_probability(cfg.k, ensemble, det);
    out = heralded_mixture(cfg.k, ensemble, det);
  }
  out->check_physical();

  const Parity parity = options.fit_parity.value_or(cfg.output_parity());
  SchemeResult r{cfg,
                 *out,
                 std::nullopt,
                 {a.state, b.state},
                 {{"tap1", a.probability}, {"tap2", b.probability}, {"bs3", p_final}},
                 0.0,
                 0.0,
                 cat_fit(*out, parity, options.fit),
                 {}};
  const CatFitOptions kopt = kitten_fit_options(options);
  for (const auto& kitten : r.kittens) r.kitten_fits.push_back(cat_fit(kitten, Parity::odd, kopt));
  finish(r);
  return r;
}

SchemeResult run_amplifier(const SchemeConfig& cfg, const RunOptions& options) {
  return cfg.is_ideal() ? run_amplifier_ideal(cfg, options) : run_amplifier_imperfect(cfg, options);
}

std::vector<SweepPoint> sweep_xi(const SchemeConfig& cfg, const std::vector<double>& xis, int workers,
                                 const RunOptions& options) {
  std::vector<std::optional<SweepPoint>> slots(xis.size());
  parallel_for(xis.size(), workers, [&](std::size_t i) {
    SchemeConfig c = cfg;
    c.xi1 = xis[i];
    c.xi2 = xis[i];
    const SchemeResult r = run_amplifier(c, options);
    slots[i] = SweepPoint{xis[i], squeezing_db(xis[i]), r.output_fit, r.final_stage};
  });
  std::vector<SweepPoint> points;
  points.reserve(slots.size());
  for (auto& s : slots) points.push_back(std::move(*s));
  return points;
}

}  // namespace catamp
