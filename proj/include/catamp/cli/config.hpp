#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catamp/analysis.hpp"
#include "catamp/comb.hpp"
#include "catamp/optimizer.hpp"
#include "catamp/scheme.hpp"

namespace catamp::cli {

/// Flat dotted-key settings, e.g. scheme.r2_3 = 0.505.
class Settings {
 public:
  /// Every known key at its default value.
  static Settings defaults();

  /// "key = value" lines; '#' starts a comment. Unknown keys and malformed
  /// values throw ConfigError naming the key and `source`.
  static Settings parse(std::string_view text, const std::string& source);
  static Settings load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// Later values win.
  void merge(const Settings& overlay);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  const std::string& str(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool boolean(const std::string& key) const;

  /// Canonical text, sorted by key; parse(render()) round-trips.
  std::string render() const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

/// Directory searched for <name>.cfg: $CATAMP_PRESET_PATH, then the
/// install-time preset directory.
std::string preset_dir();
std::vector<std::string> preset_names();
Settings load_preset(const std::string& name);

TruncationPolicy policy_from(const Settings& s);
SchemeConfig scheme_from(const Settings& s);
CatFitOptions fit_from(const Settings& s);
/// Empty for fit.parity = auto.
std::optional<Parity> fit_parity_from(const Settings& s);
WignerGridSpec wigner_from(const Settings& s);
std::vector<double> sweep_xis_from(const Settings& s);
BetaMaxSpec beta_max_from(const Settings& s, int workers);
OptProblem opt_problem_from(const Settings& s, int workers);
CombConfig comb_from(const Settings& s);

}  // namespace catamp::cli
