#include "qioms/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "qioms/errors.hpp"

namespace qioms {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key \"" + where + key + "\"");
    }
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError("config key \"" + where + key + "\" must be a number");
  }
  return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ConfigError("config key \"" + where + key + "\" must be a string");
  }
  return obj[key].get<std::string>();
}

}  // namespace

std::vector<double> SweepAxis::grid() const {
  if (points < 1) throw ConfigError("sweep axis \"" + name + "\": points must be >= 1");
  if (log_scale && (min <= 0.0 || max <= 0.0)) {
    throw ConfigError("sweep axis \"" + name + "\": log scale requires positive bounds");
  }
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(min);
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out.push_back(log_scale ? min * std::pow(max / min, t) : min + t * (max - min));
  }
  return out;
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "kappa", "gamma", "delta", "g1",  "g2",      "c1",      "c2",     "n_b", "n_plus_in",
      "n_minus_in", "eta", "n_B", "m_pairs", "log10_m", "sigma", "omega"};
  return keys;
}

void apply_axis_value(RunConfig& config, const std::string& name, double value) {
  if (name == "kappa") config.system.kappa = value;
  else if (name == "gamma") config.system.gamma = value;
  else if (name == "delta") config.system.delta = value;
  else if (name == "g1") { config.system.g1 = value; config.c1.reset(); }
  else if (name == "g2") { config.system.g2 = value; config.c2.reset(); }
  else if (name == "c1") config.c1 = value;
  else if (name == "c2") config.c2 = value;
  else if (name == "n_b") config.system.n_b = value;
  else if (name == "n_plus_in") config.system.n_plus_in = value;
  else if (name == "n_minus_in") config.system.n_minus_in = value;
  else if (name == "eta") config.illumination.eta = value;
  else if (name == "n_B") config.illumination.n_background = value;
  else if (name == "m_pairs") config.illumination.m_pairs = value;
  else if (name == "log10_m") config.illumination.m_pairs = std::round(std::pow(10.0, value));
  else if (name == "sigma") config.sigma = value;
  else if (name == "omega") {
    throw ConfigError("axis \"omega\" is a figure grid axis (fig2), not a sweep parameter");
  }
  else throw ConfigError("unknown sweep axis \"" + name + "\"");
}

SystemParams RunConfig::materialize_system() const {
  SystemParams p = system;
  if (c1) p.g1 = coupling_from_cooperativity(*c1, p.kappa, p.gamma);
  if (c2) p.g2 = coupling_from_cooperativity(*c2, p.kappa, p.gamma);
  try {
    ensure_valid(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("system config: ") + e.what());
  }
  return p;
}

json RunConfig::resolved() const {
  const SystemParams p = materialize_system();
  json doc;
  doc["system"] = {{"kappa", p.kappa},       {"gamma", p.gamma},
                   {"delta", p.delta},       {"g1", p.g1},
                   {"g2", p.g2},             {"c1", p.cooperativity1()},
                   {"c2", p.cooperativity2()}, {"n_b", p.n_b},
                   {"n_plus_in", p.n_plus_in}, {"n_minus_in", p.n_minus_in}};
  doc["illumination"] = {{"eta", illumination.eta},
                         {"n_B", illumination.n_background},
                         {"m_pairs", illumination.m_pairs}};
  const char* mode = delay == DelayMode::Zero ? "zero"
                     : delay == DelayMode::Analytic ? "analytic"
                                                    : "numeric";
  doc["filter"] = {{"sigma", sigma}, {"delay", mode}};
  if (!axes.empty()) {
    json ax = json::array();
    for (const auto& a : axes) {
      ax.push_back({{"name", a.name},
                    {"min", a.min},
                    {"max", a.max},
                    {"points", a.points},
                    {"scale", a.log_scale ? "log" : "linear"}});
    }
    doc["sweep"] = {{"axes", ax}};
  }
  doc["output"] = {{"path", out_path}, {"format", format == OutputFormat::Csv ? "csv" : "json"}};
  doc["tolerance"] = tolerance;
  doc["workers"] = workers;
  return doc;
}

RunConfig RunConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  reject_unknown_keys(doc, "",
                      {"system", "illumination", "filter", "sweep", "output", "tolerance",
                       "workers"});

  RunConfig config;

  if (doc.contains("system")) {
    const json& sys = doc["system"];
    if (!sys.is_object()) throw ConfigError("config key \"system\" must be an object");
    reject_unknown_keys(sys, "system.",
                        {"kappa", "gamma", "delta", "g1", "g2", "c1", "c2", "n_b", "n_plus_in",
                         "n_minus_in"});
    if (sys.contains("g1") && sys.contains("c1")) {
      throw ConfigError("system.g1 and system.c1 are mutually exclusive");
    }
    if (sys.contains("g2") && sys.contains("c2")) {
      throw ConfigError("system.g2 and system.c2 are mutually exclusive");
    }
    config.system.kappa = get_number(sys, "system.", "kappa", config.system.kappa);
    config.system.gamma = get_number(sys, "system.", "gamma", config.system.gamma);
    config.system.delta = get_number(sys, "system.", "delta", config.system.delta);
    config.system.g1 = get_number(sys, "system.", "g1", config.system.g1);
    config.system.g2 = get_number(sys, "system.", "g2", config.system.g2);
    if (sys.contains("c1")) config.c1 = get_number(sys, "system.", "c1", 0.0);
    if (sys.contains("c2")) config.c2 = get_number(sys, "system.", "c2", 0.0);
    config.system.n_b = get_number(sys, "system.", "n_b", config.system.n_b);
    config.system.n_plus_in = get_number(sys, "system.", "n_plus_in", config.system.n_plus_in);
    config.system.n_minus_in = get_number(sys, "system.", "n_minus_in", config.system.n_minus_in);
  }

  if (doc.contains("illumination")) {
    const json& ill = doc["illumination"];
    if (!ill.is_object()) throw ConfigError("config key \"illumination\" must be an object");
    reject_unknown_keys(ill, "illumination.", {"eta", "n_B", "m_pairs"});
    config.illumination.eta = get_number(ill, "illumination.", "eta", config.illumination.eta);
    config.illumination.n_background =
        get_number(ill, "illumination.", "n_B", config.illumination.n_background);
    config.illumination.m_pairs =
        get_number(ill, "illumination.", "m_pairs", config.illumination.m_pairs);
  }

  if (doc.contains("filter")) {
    const json& flt = doc["filter"];
    if (!flt.is_object()) throw ConfigError("config key \"filter\" must be an object");
    reject_unknown_keys(flt, "filter.", {"sigma", "delay"});
    config.sigma = get_number(flt, "filter.", "sigma", config.sigma);
    const std::string mode = get_string(flt, "filter.", "delay", "zero");
    if (mode == "zero") config.delay = DelayMode::Zero;
    else if (mode == "analytic") config.delay = DelayMode::Analytic;
    else if (mode == "numeric") config.delay = DelayMode::Numeric;
    else throw ConfigError("filter.delay must be one of zero|analytic|numeric");
  }

  if (doc.contains("sweep")) {
    const json& sweep = doc["sweep"];
    if (!sweep.is_object()) throw ConfigError("config key \"sweep\" must be an object");
    reject_unknown_keys(sweep, "sweep.", {"axes"});
    if (sweep.contains("axes")) {
      if (!sweep["axes"].is_array()) throw ConfigError("sweep.axes must be an array");
      for (const auto& entry : sweep["axes"]) {
        if (!entry.is_object()) throw ConfigError("sweep.axes entries must be objects");
        reject_unknown_keys(entry, "sweep.axes[].", {"name", "min", "max", "points", "scale"});
        SweepAxis axis;
        axis.name = get_string(entry, "sweep.axes[].", "name", "");
        bool known = false;
        for (const auto& k : sweepable_keys()) known = known || k == axis.name;
        if (!known) throw ConfigError("sweep axis name \"" + axis.name + "\" is not sweepable");
        axis.min = get_number(entry, "sweep.axes[].", "min", 0.0);
        axis.max = get_number(entry, "sweep.axes[].", "max", 0.0);
        axis.points = static_cast<int>(get_number(entry, "sweep.axes[].", "points", 0.0));
        const std::string scale = get_string(entry, "sweep.axes[].", "scale", "linear");
        if (scale == "linear") axis.log_scale = false;
        else if (scale == "log") axis.log_scale = true;
        else throw ConfigError("sweep axis scale must be linear|log");
        config.axes.push_back(axis);
      }
    }
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) throw ConfigError("config key \"output\" must be an object");
    reject_unknown_keys(out, "output.", {"path", "format"});
    config.out_path = get_string(out, "output.", "path", "");
    const std::string fmt = get_string(out, "output.", "format", "csv");
    if (fmt == "csv") config.format = OutputFormat::Csv;
    else if (fmt == "json") config.format = OutputFormat::Json;
    else throw ConfigError("output.format must be csv|json");
  }

  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) throw ConfigError("tolerance must be a number");
    config.tolerance = doc["tolerance"].get<double>();
    if (!(config.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  }
  if (doc.contains("workers")) {
    if (!doc["workers"].is_number_integer()) throw ConfigError("workers must be an integer");
    config.workers = doc["workers"].get<int>();
    if (config.workers < 0) throw ConfigError("workers must be >= 0");
  }
  return config;
}

json parse_set_overrides(const std::vector<std::string>& assignments) {
  json patch = json::object();
  for (const auto& assignment : assignments) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key.path=value, got \"" + assignment + "\"");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
      value = json::parse(raw);
      if (value.is_object() || value.is_array()) value = raw;  // only scalars via --set
    } catch (const json::parse_error&) {
      value = raw;  // bare string
    }
    json* node = &patch;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot - start);
      if (key.empty()) throw ConfigError("--set path has an empty segment: \"" + path + "\"");
      if (dot == std::string::npos) {
        (*node)[key] = value;
        break;
      }
      node = &(*node)[key];
      start = dot + 1;
    }
  }
  return patch;
}

json merge_json(json base, const json& patch) {
  if (!base.is_object() || !patch.is_object()) return patch;
  for (const auto& [key, value] : patch.items()) {
    if (base.contains(key) && base[key].is_object() && value.is_object()) {
      base[key] = merge_json(base[key], value);
    } else {
      base[key] = value;
    }
  }
  return base;
}

json merge_config(json base, const json& patch) {
  if (patch.is_object() && patch.contains("system") && patch["system"].is_object() &&
      base.is_object() && base.contains("system") && base["system"].is_object()) {
    const json& sys = patch["system"];
    if (sys.contains("g1")) base["system"].erase("c1");
    if (sys.contains("c1")) base["system"].erase("g1");
    if (sys.contains("g2")) base["system"].erase("c2");
    if (sys.contains("c2")) base["system"].erase("g2");
  }
  return merge_json(std::move(base), patch);
}

}  // namespace qioms
