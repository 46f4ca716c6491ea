#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qioms/params.hpp"

namespace qioms {

enum class DelayMode { Zero, Analytic, Numeric };
enum class OutputFormat { Csv, Json };

struct SweepAxis {
  std::string name;  // one of the sweepable keys, see kSweepableKeys
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log_scale = false;

  std::vector<double> grid() const;
};

/// Fully resolved run description. Built from a JSON document (file and/or
/// --set overrides) layered over documented defaults; unknown keys are
/// rejected. Couplings may be given either directly (g1, g2) or as
/// cooperativities (c1, c2), the latter resolved against kappa and gamma.
struct RunConfig {
  SystemParams system;
  std::optional<double> c1;  // alternative to system.g1
  std::optional<double> c2;  // alternative to system.g2
  IlluminationParams illumination;
  double sigma = 1.0;
  DelayMode delay = DelayMode::Zero;
  std::vector<SweepAxis> axes;
  std::string out_path;  // empty = stdout
  OutputFormat format = OutputFormat::Csv;
  double tolerance = 1e-9;
  int workers = 0;  // 0 = hardware concurrency

  /// System parameters with any cooperativity specification resolved into
  /// couplings. Validates and throws ConfigError on invariant violations.
  SystemParams materialize_system() const;

  /// The effective configuration echoed into dataset metadata.
  nlohmann::json resolved() const;

  static RunConfig from_json(const nlohmann::json& doc);
};

/// Names accepted for sweep axes and --set assignments on the system /
/// illumination / filter blocks.
const std::vector<std::string>& sweepable_keys();

/// Applies one axis value to a config (used by the sweep engine); throws
/// ConfigError for unknown names.
void apply_axis_value(RunConfig& config, const std::string& name, double value);

/// Parses "a.b.c=value" assignments into a JSON patch document.
nlohmann::json parse_set_overrides(const std::vector<std::string>& assignments);

/// Deep merge: keys in `patch` override `base`; objects merge recursively.
nlohmann::json merge_json(nlohmann::json base, const nlohmann::json& patch);

/// merge_json plus coupling-key hygiene: a patch that sets system.g1 drops a
/// base system.c1 (and vice versa, likewise for g2/c2), so layered configs
/// never trip the mutual-exclusion check by accident.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& patch);

}  // namespace qioms
