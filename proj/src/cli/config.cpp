#include "catamp/cli/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catamp/errors.hpp"
#include "catamp/states.hpp"

namespace catamp::cli {
namespace {

enum class Kind { number, integer, boolean, text };

struct KeySpec {
  const char* key;
  Kind kind;
  const char* value;
};

// clang-format off
const KeySpec kKeys[] = {
    {"command", Kind::text, "amplify"},
    {"scenario", Kind::text, "custom"},
    {"truncation.n_max", Kind::integer, "40"},
    {"truncation.tail_tol", Kind::number, "1e-8"},
    {"scheme.xi1", Kind::number, "0.346"},
    {"scheme.xi2", Kind::number, "0.346"},
    {"scheme.loss1", Kind::number, "0"},
    {"scheme.loss2", Kind::number, "0"},
    {"scheme.r2_1", Kind::number, "0.05"},
    {"scheme.r2_2", Kind::number, "0.15"},
    {"scheme.r2_3", Kind::number, "0.49"},
    {"scheme.l1", Kind::integer, "0"},
    {"scheme.k1", Kind::integer, "1"},
    {"scheme.l2", Kind::integer, "0"},
    {"scheme.k2", Kind::integer, "1"},
    {"scheme.k", Kind::integer, "1"},
    {"scheme.eta1", Kind::number, "1"},
    {"scheme.eta2", Kind::number, "1"},
    {"scheme.eta3", Kind::number, "1"},
    {"scheme.pipeline", Kind::text, "auto"},
    {"fit.beta_lo", Kind::number, "0"},
    {"fit.beta_hi", Kind::number, "3.5"},
    {"fit.beta_step", Kind::number, "0.005"},
    {"fit.f_target", Kind::number, "0.99"},
    {"fit.parity", Kind::text, "auto"},
    {"fit.squeezing_db", Kind::number, "0"},
    {"fit.axis", Kind::text, "position"},
    {"fit.squeeze_scan", Kind::boolean, "false"},
    {"fit.db_lo", Kind::number, "0"},
    {"fit.db_hi", Kind::number, "3"},
    {"fit.db_step", Kind::number, "0.05"},
    {"wigner.enabled", Kind::boolean, "true"},
    {"wigner.x_max", Kind::number, "6"},
    {"wigner.p_max", Kind::number, "6"},
    {"wigner.points", Kind::integer, "121"},
    {"sweep.kind", Kind::text, "xi"},
    {"sweep.xi_lo", Kind::number, "0.2"},
    {"sweep.xi_hi", Kind::number, "0.9"},
    {"sweep.xi_step", Kind::number, "0.02"},
    {"betamax.pairs", Kind::text, "0:1,1:2,3:2,0:0"},
    {"betamax.squeezing_db", Kind::number, "-3"},
    {"betamax.r2_lo", Kind::number, "0.001"},
    {"betamax.r2_hi", Kind::number, "0.999"},
    {"optimize.pipeline", Kind::text, "amplifier"},
    {"optimize.free", Kind::text, "r2_1:0.01:0.3,r2_2:0.01:0.3,r2_3:0.3:0.7"},
    {"optimize.objective", Kind::text, "fidelity_at_beta"},
    {"optimize.target_beta", Kind::number, "2.51"},
    {"optimize.parity", Kind::text, "auto"},
    {"optimize.grid_points", Kind::integer, "21"},
    {"optimize.max_iterations", Kind::integer, "200"},
    {"optimize.tolerance", Kind::number, "1e-4"},
    {"comb.omega", Kind::number, "1"},
    {"comb.depth1", Kind::text, "auto"},
    {"comb.depth2", Kind::text, "auto"},
    {"comb.theta1", Kind::number, "0"},
    {"comb.theta2", Kind::number, "-1.5707963267948966"},
    {"comb.fbs3_reflect", Kind::text, "auto"},
    {"comb.run", Kind::boolean, "true"},
};
// clang-format on

const KeySpec* find_key(const std::string& key) {
  for (const KeySpec& k : kKeys) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& v, double& out) {
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  return ec == std::errc() && p == end;
}

bool parse_int(const std::string& v, int& out) {
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  return ec == std::errc() && p == end;
}

std::optional<bool> parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  return std::nullopt;
}

void check_value(const KeySpec& spec, const std::string& value) {
  double d = 0.0;
  int i = 0;
  switch (spec.kind) {
    case Kind::number:
      if (!parse_double(value, d)) throw ConfigError(fmt::format("{}: expected a number, got '{}'", spec.key, value));
      break;
    case Kind::integer:
      if (!parse_int(value, i)) throw ConfigError(fmt::format("{}: expected an integer, got '{}'", spec.key, value));
      break;
    case Kind::boolean:
      if (!parse_bool(value)) throw ConfigError(fmt::format("{}: expected true or false, got '{}'", spec.key, value));
      break;
    case Kind::text:
      if (value.empty()) throw ConfigError(fmt::format("{}: empty value", spec.key));
      break;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double number_in(const std::string& key, const std::string& v) {
  double d = 0.0;
  if (!parse_double(v, d)) throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, v));
  return d;
}

std::optional<Parity> parity_setting(const Settings& s, const std::string& key) {
  const std::string& v = s.str(key);
  if (v == "auto") return std::nullopt;
  if (v == "odd") return Parity::odd;
  if (v == "even") return Parity::even;
  throw ConfigError(fmt::format("{}: expected odd, even or auto, got '{}'", key, v));
}

SqueezeAxis axis_setting(const Settings& s) {
  const std::string& v = s.str("fit.axis");
  if (v == "position") return SqueezeAxis::position;
  if (v == "momentum") return SqueezeAxis::momentum;
  throw ConfigError(fmt::format("fit.axis: expected position or momentum, got '{}'", v));
}

}  // namespace

Settings Settings::defaults() {
  Settings s;
  for (const KeySpec& k : kKeys) s.kv_[k.key] = k.value;
  return s;
}

Settings Settings::parse(std::string_view text, const std::string& source) {
  Settings s;
  std::stringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'", source, lineno, body));
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      s.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", source, lineno, e.what()));
    }
  }
  return s;
}

Settings Settings::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buf;
  buf << f.rdbuf();
  return parse(buf.str(), path);
}

void Settings::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError(fmt::format("unknown config key '{}'", key));
  check_value(*spec, value);
  kv_[key] = value;
}

void Settings::merge(const Settings& overlay) {
  for (const auto& [k, v] : overlay.kv_) kv_[k] = v;
}

const std::string& Settings::str(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError(fmt::format("missing config key '{}'", key));
  return it->second;
}

double Settings::number(const std::string& key) const { return number_in(key, str(key)); }

int Settings::integer(const std::string& key) const {
  int i = 0;
  if (!parse_int(str(key), i)) throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, str(key)));
  return i;
}

bool Settings::boolean(const std::string& key) const {
  const auto b = parse_bool(str(key));
  if (!b) throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, str(key)));
  return *b;
}

std::string Settings::render() const {
  std::string out;
  for (const auto& [k, v] : kv_) out += fmt::format("{} = {}\n", k, v);
  return out;
}

std::string preset_dir() {
  if (const char* env = std::getenv("CATAMP_PRESET_PATH"); env && *env) return env;
  return CATAMP_PRESET_DIR;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(preset_dir(), ec)) {
    if (entry.path().extension() == ".cfg") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Settings load_preset(const std::string& name) {
  const std::filesystem::path path = std::filesystem::path(preset_dir()) / (name + ".cfg");
  if (!std::filesystem::exists(path)) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError(fmt::format("unknown preset '{}' (known: {})", name, known));
  }
  return Settings::load(path.string());
}

TruncationPolicy policy_from(const Settings& s) {
  TruncationPolicy p;
  p.n_max = s.integer("truncation.n_max");
  p.tail_tol = s.number("truncation.tail_tol");
  p.validate();
  return p;
}

SchemeConfig scheme_from(const Settings& s) {
  SchemeConfig c;
  c.xi1 = s.number("scheme.xi1");
  c.xi2 = s.number("scheme.xi2");
  c.loss1 = s.number("scheme.loss1");
  c.loss2 = s.number("scheme.loss2");
  c.r2_1 = s.number("scheme.r2_1");
  c.r2_2 = s.number("scheme.r2_2");
  c.r2_3 = s.number("scheme.r2_3");
  c.l1 = s.integer("scheme.l1");
  c.k1 = s.integer("scheme.k1");
  c.l2 = s.integer("scheme.l2");
  c.k2 = s.integer("scheme.k2");
  c.k = s.integer("scheme.k");
  c.eta1 = s.number("scheme.eta1");
  c.eta2 = s.number("scheme.eta2");
  c.eta3 = s.number("scheme.eta3");
  c.policy = policy_from(s);
  c.validate();
  return c;
}

CatFitOptions fit_from(const Settings& s) {
  CatFitOptions o;
  o.scan = BetaScan{s.number("fit.beta_lo"), s.number("fit.beta_hi"), s.number("fit.beta_step")};
  o.f_target = s.number("fit.f_target");
  if (!(o.f_target > 0.0 && o.f_target < 1.0)) throw ConfigError("fit.f_target must lie in (0, 1)");
  o.squeezing_db = s.number("fit.squeezing_db");
  if (o.squeezing_db > 0.0) throw ConfigError("fit.squeezing_db must be <= 0 (squeezing is a negative level)");
  o.axis = axis_setting(s);
  if (s.boolean("fit.squeeze_scan")) {
    o.squeeze_scan = SqueezeScan{s.number("fit.db_lo"), s.number("fit.db_hi"), s.number("fit.db_step"), o.axis};
  }
  return o;
}

std::optional<Parity> fit_parity_from(const Settings& s) { return parity_setting(s, "fit.parity"); }

WignerGridSpec wigner_from(const Settings& s) {
  return WignerGridSpec{s.number("wigner.x_max"), s.number("wigner.p_max"), s.integer("wigner.points")};
}

std::vector<double> sweep_xis_from(const Settings& s) {
  const double lo = s.number("sweep.xi_lo");
  const double hi = s.number("sweep.xi_hi");
  const double step = s.number("sweep.xi_step");
  if (!(step > 0.0) || hi < lo || lo < 0.0) {
    throw ConfigError(fmt::format("sweep.xi range [{}, {}] step {} is empty or negative", lo, hi, step));
  }
  return linear_grid(lo, hi, step);
}

BetaMaxSpec beta_max_from(const Settings& s, int workers) {
  BetaMaxSpec spec;
  for (const std::string& pair : split(s.str("betamax.pairs"), ',')) {
    const auto lk = split(pair, ':');
    int l = 0;
    int k = 0;
    if (lk.size() != 2 || !parse_int(lk[0], l) || !parse_int(lk[1], k) || l < 0 || k < 0) {
      throw ConfigError(fmt::format("betamax.pairs: malformed entry '{}' (expected l:k)", pair));
    }
    spec.lk.emplace_back(l, k);
  }
  const double db = s.number("betamax.squeezing_db");
  if (db > 0.0) throw ConfigError("betamax.squeezing_db must be <= 0");
  spec.xi = xi_from_db(db);
  spec.f_target = s.number("fit.f_target");
  spec.r2_lo = s.number("betamax.r2_lo");
  spec.r2_hi = s.number("betamax.r2_hi");
  if (!(spec.r2_lo >= 0.0 && spec.r2_lo <= spec.r2_hi && spec.r2_hi <= 1.0)) {
    throw ConfigError("betamax.r2_lo/r2_hi must satisfy 0 <= lo <= hi <= 1");
  }
  spec.grid_points = s.integer("optimize.grid_points");
  spec.workers = workers;
  spec.policy = policy_from(s);
  spec.scan = fit_from(s).scan;
  return spec;
}

OptProblem opt_problem_from(const Settings& s, int workers) {
  OptProblem p;
  p.base = scheme_from(s);
  p.pipeline = pipeline_from_string(s.str("optimize.pipeline"));
  for (const std::string& item : split(s.str("optimize.free"), ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) {
      throw ConfigError(fmt::format("optimize.free: malformed entry '{}' (expected name:lo:hi)", item));
    }
    p.free.push_back(Bound{free_param_from_string(parts[0]), number_in("optimize.free", parts[1]),
                           number_in("optimize.free", parts[2])});
  }
  p.objective = objective_from_string(s.str("optimize.objective"));
  p.target_beta = s.number("optimize.target_beta");
  p.f_target = s.number("fit.f_target");
  p.parity = parity_setting(s, "optimize.parity");
  p.scan = fit_from(s).scan;
  p.grid_points = s.integer("optimize.grid_points");
  p.max_iterations = s.integer("optimize.max_iterations");
  p.tolerance = s.number("optimize.tolerance");
  p.workers = workers;
  p.validate();
  return p;
}

CombConfig comb_from(const Settings& s) {
  const SchemeConfig scheme = scheme_from(s);
  auto depth = [&](const char* key, double r2) {
    const std::string& v = s.str(key);
    return v == "auto" ? depth_for_reflectivity(r2) : number_in(key, v);
  };
  CombConfig c;
  c.omega = s.number("comb.omega");
  c.eom1 = EomSetting{depth("comb.depth1", scheme.r2_1), s.number("comb.theta1")};
  c.eom2 = EomSetting{depth("comb.depth2", scheme.r2_2), s.number("comb.theta2")};
  const std::string& f3 = s.str("comb.fbs3_reflect");
  c.fbs3_reflect = f3 == "auto" ? scheme.r2_3 : number_in("comb.fbs3_reflect", f3);
  c.validate();
  return c;
}

}  // namespace catamp::cli
