#include "catamp/cli/commands.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "catamp/errors.hpp"
#include "catamp/logging.hpp"
#include "catamp/serialize.hpp"

namespace catamp::cli {
namespace {

RunOptions run_options(const Settings& s) {
  RunOptions o;
  o.fit = fit_from(s);
  o.fit_parity = fit_parity_from(s);
  return o;
}

Table photon_table(const std::vector<std::string>& names, const std::vector<const DensityMatrix*>& states) {
  Table t{"photon_distribution", {"n"}, {}};
  for (const auto& n : names) t.columns.push_back(n);
  std::vector<std::vector<double>> p;
  for (const auto* rho : states) p.push_back(photon_distribution(*rho));
  for (std::size_t n = 0; n < p.front().size(); ++n) {
    std::vector<Cell> row{static_cast<int>(n)};
    for (const auto& dist : p) row.emplace_back(dist[n]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table wigner_table(const DensityMatrix& rho, const WignerGridSpec& spec) {
  const WignerGrid grid = wigner(rho, spec);
  Table t{"wigner", {"x", "p", "w"}, {}};
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    for (std::size_t j = 0; j < grid.p.size(); ++j) {
      t.rows.push_back({grid.x[i], grid.p[j], grid.value(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  return t;
}

Table curve_table(const DensityMatrix& rho, const CatFit& fit, const CatFitOptions& options) {
  CatFitOptions o = options;
  o.squeeze_scan.reset();
  o.squeezing_db = fit.squeezing_db;
  o.axis = fit.axis;
  Table t{"fidelity_curve", {"beta", "f"}, {}};
  for (const auto& [b, f] : fidelity_curve(rho, fit.parity, o)) t.rows.push_back({b, f});
  return t;
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

std::string fit_line(const std::string& label, const CatFit& f) {
  return fmt::format("{}: beta*={:.4f} F*={:.4f} beta_max({:g})={} parity={}{}", label, f.beta_star, f.f_star,
                     f.f_target, f.beta_max ? fmt::format("{:.4f}", *f.beta_max) : "none", to_string(f.parity),
                     f.squeezing_db != 0.0 ? fmt::format(" squeezing={:.2f} dB", f.squeezing_db) : "");
}

Json catfit_doc(const SchemeResult& r) {
  Json stages = Json::object();
  for (const auto& s : r.stages) stages[s.name] = s.probability;
  Json kittens = Json::array();
  for (const auto& f : r.kitten_fits) kittens.push_back(to_json(f));
  return Json{{"schema_version", kSchemaVersion},
              {"fit", to_json(r.output_fit)},
              {"kitten_fits", kittens},
              {"probability", Json{{"stages", stages},
                                   {"overall_product", r.overall_product},
                                   {"final_stage", r.final_stage}}}};
}

void add_state_outputs(CommandResult& out, const RunRequest& req, const SchemeResult& r,
                       const std::vector<std::string>& names, const std::vector<const DensityMatrix*>& states) {
  const Settings& s = req.settings;
  out.files.add_table(photon_table(names, states), req.format);
  if (s.boolean("wigner.enabled")) out.files.add_table(wigner_table(r.output, wigner_from(s)), req.format);
  out.files.add_table(curve_table(r.output, r.output_fit, fit_from(s)), req.format);
  out.files.add_json("catfit.json", catfit_doc(r));
  out.files.add_json("result.json", to_json(r));
}

CommandResult cmd_kitten(const RunRequest& req) {
  const Settings& s = req.settings;
  const SchemeConfig c = scheme_from(s);
  const SchemeResult r = run_single_stage(c.xi1, c.l1, c.k1, c.r2_1, c.policy, run_options(s));
  CommandResult out;
  add_state_outputs(out, req, r, {"p"}, {&r.output});
  out.summary.push_back(fit_line("kitten", r.output_fit));
  out.summary.push_back(fmt::format("herald probability: {:.6g}", r.final_stage));
  return out;
}

CommandResult cmd_amplify(const RunRequest& req) {
  const Settings& s = req.settings;
  const SchemeConfig cfg = scheme_from(s);
  const std::string& pipeline = s.str("scheme.pipeline");
  SchemeResult r = [&] {
    if (pipeline == "auto") return run_amplifier(cfg, run_options(s));
    if (pipeline == "pure") return run_amplifier_ideal(cfg, run_options(s));
    if (pipeline == "mixed") return run_amplifier_imperfect(cfg, run_options(s));
    throw ConfigError(fmt::format("scheme.pipeline: expected auto, pure or mixed, got '{}'", pipeline));
  }();
  CommandResult out;
  add_state_outputs(out, req, r, {"output", "kitten1", "kitten2"}, {&r.output, &r.kittens[0], &r.kittens[1]});
  out.summary.push_back(fit_line("output", r.output_fit));
  for (std::size_t i = 0; i < r.kitten_fits.size(); ++i) {
    out.summary.push_back(fit_line(fmt::format("kitten{}", i + 1), r.kitten_fits[i]));
  }
  for (const auto& st : r.stages) out.summary.push_back(fmt::format("{} probability: {:.6g}", st.name, st.probability));
  out.summary.push_back(fmt::format("overall product: {:.6g}", r.overall_product));
  return out;
}

CommandResult cmd_sweep(const RunRequest& req) {
  const Settings& s = req.settings;
  CommandResult out;
  const std::string& kind = s.str("sweep.kind");
  if (kind == "xi") {
    const auto points = sweep_xi(scheme_from(s), sweep_xis_from(s), req.workers, run_options(s));
    Table t{"sweep", {"xi", "db", "beta_star", "f_star", "beta_max", "probability"}, {}};
    for (const auto& p : points) {
      t.rows.push_back({p.xi, p.db, p.fit.beta_star, p.fit.f_star, optional_cell(p.fit.beta_max), p.probability});
    }
    out.files.add_table(t, req.format);
    out.summary.push_back(fmt::format("{} sweep points", points.size()));
  } else if (kind == "beta_max") {
    const auto rows = beta_max_curve(beta_max_from(s, req.workers));
    Table t{"beta_max", {"l", "k", "xi", "db", "r2", "parity", "beta_max", "f_star", "beta_star", "odd_table"}, {}};
    for (const auto& r : rows) {
      const bool odd = r.parity == Parity::odd;
      t.rows.push_back({r.l, r.k, r.xi, r.db, r.r2, to_string(r.parity), optional_cell(r.beta_max), r.f_star,
                        r.beta_star, odd ? 1 : 0});
      out.summary.push_back(fmt::format("l={} k={} R2={:.4f} beta_max={}{}", r.l, r.k, r.r2,
                                        r.beta_max ? fmt::format("{:.4f}", *r.beta_max) : "none",
                                        odd ? "" : " (even branch, excluded)"));
    }
    out.files.add_table(t, req.format);
  } else {
    throw ConfigError(fmt::format("sweep.kind: expected xi or beta_max, got '{}'", kind));
  }
  return out;
}

CommandResult cmd_optimize(const RunRequest& req) {
  const OptProblem problem = opt_problem_from(req.settings, req.workers);
  const OptReport report = optimize(problem);
  CommandResult out;
  out.files.add_json("opt_report.json", to_json(report));
  Json cfg = to_json(report.best_config);
  cfg = Json{{"schema_version", kSchemaVersion}, {"scheme", cfg}};
  out.files.add_json("scheme_config.json", cfg);
  std::string best;
  for (std::size_t i = 0; i < report.names.size(); ++i) {
    best += fmt::format("{}{}={:.4f}", i ? " " : "", report.names[i], report.best[i]);
  }
  out.summary.push_back(fmt::format("best {} = {:.6f} at {}", to_string(report.objective), report.best_objective, best));
  out.summary.push_back(fmt::format("{} evaluations, {} simplex iterations", report.evaluations, report.iterations));
  return out;
}

CommandResult cmd_comb_map(const RunRequest& req) {
  const Settings& s = req.settings;
  const SchemeConfig direct = scheme_from(s);
  if (direct.l1 != 0 || direct.l2 != 0) throw ConfigError("comb-map implements l1 = l2 = 0 only");
  const CombConfig comb = comb_from(s);
  SchemeConfig cfg = comb_to_scheme(comb, direct.xi1, direct.k1, direct.k2, direct.k, direct.policy);
  cfg.xi2 = direct.xi2;
  cfg.loss1 = direct.loss1;
  cfg.loss2 = direct.loss2;
  cfg.eta1 = direct.eta1;
  cfg.eta2 = direct.eta2;
  cfg.eta3 = direct.eta3;

  CommandResult out;
  Json doc{{"schema_version", kSchemaVersion},
           {"comb", to_json(comb)},
           {"reflectivities", Json{{"r2_1", cfg.r2_1}, {"r2_2", cfg.r2_2}, {"r2_3", cfg.r2_3}}}};
  out.files.add_json("comb.json", doc);
  out.files.add_json("scheme_config.json", Json{{"schema_version", kSchemaVersion}, {"scheme", to_json(cfg)}});
  out.summary.push_back(fmt::format("depths {:.6f}, {:.6f} -> R2 = {{{:g}, {:g}, {:g}}}", comb.eom1.depth,
                                    comb.eom2.depth, cfg.r2_1, cfg.r2_2, cfg.r2_3));
  if (s.boolean("comb.run")) {
    const SchemeResult r = run_amplifier(cfg, run_options(s));
    out.files.add_json("catfit.json", catfit_doc(r));
    out.files.add_json("result.json", to_json(r));
    out.summary.push_back(fit_line("output", r.output_fit));
  }
  return out;
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) t = std::strtoll(epoch, nullptr, 10);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Settings settings_from_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot open manifest '{}'", path));
  Json m;
  try {
    m = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("manifest '{}': {}", path, e.what()));
  }
  if (!m.contains("settings") || !m["settings"].is_object()) {
    throw ConfigError(fmt::format("manifest '{}' has no settings block", path));
  }
  Settings s = Settings::defaults();
  for (const auto& [k, v] : m["settings"].items()) {
    if (!v.is_string()) throw ConfigError(fmt::format("manifest setting '{}' must be a string", k));
    s.set(k, v.get<std::string>());
  }
  return s;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"kitten", "amplify", "sweep", "optimize", "comb-map"};
  return names;
}

CommandResult run_command(const RunRequest& request) {
  const std::string& cmd = request.settings.str("command");
  if (cmd == "kitten") return cmd_kitten(request);
  if (cmd == "amplify") return cmd_amplify(request);
  if (cmd == "sweep") return cmd_sweep(request);
  if (cmd == "optimize") return cmd_optimize(request);
  if (cmd == "comb-map") return cmd_comb_map(request);
  throw ConfigError(fmt::format("command: unknown command '{}'", cmd));
}

Json make_manifest(const RunRequest& request, const Json& digests) {
  const Settings& s = request.settings;
  Json settings = Json::object();
  for (const auto& [k, v] : s.entries()) settings[k] = v;
  return Json{{"schema_version", kSchemaVersion},
              {"scenario", s.str("scenario")},
              {"command", s.str("command")},
              {"tool", Json{{"name", "catamp"}, {"version", CATAMP_VERSION}}},
              {"timestamp", utc_timestamp()},
              {"format", request.format == Format::csv ? "csv" : "json"},
              {"config", to_json(scheme_from(s))},
              {"settings", settings},
              {"files", digests}};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heralded cat-state amplification simulator", "catamp"};
  app.set_version_flag("--version", std::string(CATAMP_VERSION));
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string preset;
  std::string replay;
  std::string out_dir = "catamp-out";
  std::string format = "csv";
  int workers = 1;
  std::optional<int> n_max;
  std::vector<std::string> overrides;
  bool list = false;

  app.add_option("--config", config_path, "Flat key = value config file applied over the preset");
  app.add_option("--preset", preset, "Shipped scenario preset");
  app.add_option("--replay", replay, "Re-run the settings recorded in a manifest.json");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads for sweeps and grids")->capture_default_str();
  app.add_option("--n-max", n_max, "Fock cutoff (overrides truncation.n_max)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--set", overrides, "Extra key=value override (repeatable)");
  app.add_flag("--list-presets", list, "Print the preset names and exit");

  std::string run_preset;
  auto* run = app.add_subcommand("run", "Run a preset by name");
  run->add_option("preset", run_preset, "Preset name")->required();
  run->fallthrough();
  std::vector<CLI::App*> commands;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, fmt::format("Force command = {}", name));
    sub->fallthrough();
    commands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (list) {
    for (const auto& n : preset_names()) out << n << '\n';
    return kExitOk;
  }

  // Keyed by the message with its numbers blanked; keeps the first instance.
  struct Seen {
    std::string first;
    int count = 0;
  };
  std::map<std::string, Seen> warnings;
  const std::regex number(R"([-+]?[0-9]*\.?[0-9]+([eE][-+]?[0-9]+)?)");
  set_warning_sink([&](const std::string& m) {
    Seen& s = warnings[std::regex_replace(m, number, "#")];
    if (s.count++ == 0) s.first = m;
  });
  auto flush_warnings = [&] {
    set_warning_sink({});
    for (const auto& [key, s] : warnings) {
      err << "warning: " << s.first << (s.count > 1 ? fmt::format(" (+{} similar)", s.count - 1) : "") << '\n';
    }
    warnings.clear();
  };

  try {
    if (workers < 1) throw ConfigError("--workers must be >= 1");
    if (!run_preset.empty()) {
      if (!preset.empty() && preset != run_preset) throw ConfigError("both --preset and run <preset> given");
      preset = run_preset;
    }
    RunRequest req;
    req.workers = workers;
    req.format = format_from_string(format);
    if (!replay.empty()) {
      req.settings = settings_from_manifest(replay);
    } else {
      if (!preset.empty()) {
        req.settings.merge(load_preset(preset));
        if (!req.settings.has("scenario") || req.settings.str("scenario") == "custom") req.settings.set("scenario", preset);
      }
      if (!config_path.empty()) req.settings.merge(Settings::load(config_path));
    }
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
      req.settings.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (n_max) req.settings.set("truncation.n_max", std::to_string(*n_max));
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (commands[i]->parsed()) req.settings.set("command", command_names()[i]);
    }

    const CommandResult result = run_command(req);
    OutputSet files = result.files;
    files.add_text("resolved.cfg", req.settings.render());
    const Json digests = write_outputs(out_dir, files);
    const Json manifest = make_manifest(req, digests);
    OutputSet meta;
    meta.add_json("manifest.json", manifest);
    write_outputs(out_dir, meta);

    flush_warnings();
    out << fmt::format("[{}] {}\n", req.settings.str("scenario"), req.settings.str("command"));
    for (const auto& line : result.summary) out << "  " << line << '\n';
    out << fmt::format("  wrote {} files to {}\n", files.files().size() + 1, out_dir);
    return kExitOk;
  } catch (const ConfigError& e) {
    flush_warnings();
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RangeError& e) {
    flush_warnings();
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ZeroHeraldError& e) {
    flush_warnings();
    err << "zero-probability herald: " << e.what() << '\n';
    return kExitZeroHerald;
  } catch (const ImpossibleObservationError& e) {
    flush_warnings();
    err << "zero-probability herald: " << e.what() << '\n';
    return kExitZeroHerald;
  } catch (const Error& e) {
    flush_warnings();
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace catamp::cli
