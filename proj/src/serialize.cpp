#include "catamp/serialize.hpp"

#include "catamp/errors.hpp"

namespace catamp {

Json to_json(const TruncationPolicy& p) { return Json{{"n_max", p.n_max}, {"tail_tol", p.tail_tol}}; }

Json to_json(const SchemeConfig& c) {
  return Json{{"xi1", c.xi1},     {"xi2", c.xi2},     {"loss1", c.loss1}, {"loss2", c.loss2},
              {"r2_1", c.r2_1},   {"r2_2", c.r2_2},   {"r2_3", c.r2_3},   {"l1", c.l1},
              {"k1", c.k1},       {"l2", c.l2},       {"k2", c.k2},       {"k", c.k},
              {"eta1", c.eta1},   {"eta2", c.eta2},   {"eta3", c.eta3},   {"truncation", to_json(c.policy)}};
}

Json to_json(const CatFit& f) {
  Json j{{"beta_star", f.beta_star},
         {"f_star", f.f_star},
         {"beta_max", f.beta_max ? Json(*f.beta_max) : Json(nullptr)},
         {"f_target", f.f_target},
         {"squeezing_db", f.squeezing_db},
         {"axis", to_string(f.axis)},
         {"parity", to_string(f.parity)},
         {"scan", Json{{"lo", f.scan.lo}, {"hi", f.scan.hi}, {"step", f.scan.step}}},
         {"peak_verified", f.peak_verified},
         {"degenerate", f.degenerate}};
  return j;
}

Json to_json(const SchemeResult& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) stages.push_back(Json{{"name", s.name}, {"probability", s.probability}});
  Json kittens = Json::array();
  for (const auto& f : r.kitten_fits) kittens.push_back(to_json(f));
  return Json{{"schema_version", kSchemaVersion},
              {"config", to_json(r.config)},
              {"stages", stages},
              {"probability",
               Json{{"overall_product", r.overall_product}, {"final_stage", r.final_stage}}},
              {"output_fit", to_json(r.output_fit)},
              {"kitten_fits", kittens},
              {"mean_photon_number", mean_photon_number(r.output)},
              {"parity_expectation", parity_expectation(r.output)}};
}

Json to_json(const SweepPoint& p) {
  return Json{{"xi", p.xi}, {"db", p.db}, {"probability", p.probability}, {"fit", to_json(p.fit)}};
}

Json to_json(const OptReport& r) {
  Json best = Json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) best[r.names[i]] = r.best[i];
  return Json{{"schema_version", kSchemaVersion},
              {"objective", to_string(r.objective)},
              {"pipeline", to_string(r.pipeline)},
              {"best", best},
              {"best_objective", r.best_objective},
              {"grid_objective", r.grid_objective},
              {"evaluations", r.evaluations},
              {"iterations", r.iterations},
              {"trace", r.trace},
              {"best_config", to_json(r.best_config)}};
}

Json to_json(const CombConfig& c) {
  return Json{{"omega", c.omega},
              {"eom1", Json{{"depth", c.eom1.depth}, {"theta", c.eom1.theta}}},
              {"eom2", Json{{"depth", c.eom2.depth}, {"theta", c.eom2.theta}}},
              {"fbs3_reflect", c.fbs3_reflect}};
}

SchemeConfig scheme_config_from_json(const Json& j) {
  SchemeConfig c;
  try {
    c.xi1 = j.at("xi1").get<double>();
    c.xi2 = j.at("xi2").get<double>();
    c.loss1 = j.at("loss1").get<double>();
    c.loss2 = j.at("loss2").get<double>();
    c.r2_1 = j.at("r2_1").get<double>();
    c.r2_2 = j.at("r2_2").get<double>();
    c.r2_3 = j.at("r2_3").get<double>();
    c.l1 = j.at("l1").get<int>();
    c.k1 = j.at("k1").get<int>();
    c.l2 = j.at("l2").get<int>();
    c.k2 = j.at("k2").get<int>();
    c.k = j.at("k").get<int>();
    c.eta1 = j.at("eta1").get<double>();
    c.eta2 = j.at("eta2").get<double>();
    c.eta3 = j.at("eta3").get<double>();
    c.policy.n_max = j.at("truncation").at("n_max").get<int>();
    c.policy.tail_tol = j.at("truncation").at("tail_tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scheme config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace catamp
