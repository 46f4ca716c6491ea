// qi-oms: dataset generator for the optomechanical quantum-illumination model.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qioms/config.hpp"
#include "qioms/dataset.hpp"
#include "qioms/errors.hpp"
#include "qioms/figures.hpp"
#include "qioms/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> set_overrides;
  std::string out_path;
  std::string format;
  int workers = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--set", opts.set_overrides,
                  "Override a config key, e.g. --set system.g1=0.5 (repeatable)");
  cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format: csv|json (overrides config)");
  cmd->add_option("--workers", opts.workers, "Worker threads for grids (0 = hardware)");
}

json load_overrides(const CommonOptions& opts) {
  json doc = json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw qioms::ConfigError("cannot open config file \"" + opts.config_path + "\"");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw qioms::ConfigError("config file \"" + opts.config_path + "\": " + e.what());
    }
  }
  doc = qioms::merge_config(doc, qioms::parse_set_overrides(opts.set_overrides));
  json cli_patch = json::object();
  if (!opts.out_path.empty()) cli_patch["output"]["path"] = opts.out_path;
  if (!opts.format.empty()) cli_patch["output"]["format"] = opts.format;
  if (opts.workers >= 0) cli_patch["workers"] = opts.workers;
  return qioms::merge_config(doc, cli_patch);
}

qioms::RunConfig resolve_config(const CommonOptions& opts) {
  return qioms::RunConfig::from_json(
      qioms::merge_config(qioms::default_config_json(), load_overrides(opts)));
}

void emit(const qioms::Dataset& ds, const qioms::RunConfig& config) {
  if (config.out_path.empty()) {
    if (config.format == qioms::OutputFormat::Csv) ds.write_csv(std::cout);
    else ds.write_json(std::cout);
    return;
  }
  std::ofstream out(config.out_path);
  if (!out) throw qioms::ConfigError("cannot open output file \"" + config.out_path + "\"");
  if (config.format == qioms::OutputFormat::Csv) ds.write_csv(out);
  else ds.write_json(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optomechanical microwave quantum illumination simulator"};
  app.set_version_flag("--version", std::string("qi-oms ") + qioms::kVersion);
  app.require_subcommand(1);

  CommonOptions figure_opts;
  std::string figure_id;
  CLI::App* figure_cmd = app.add_subcommand(
      "figure", "Reproduce a canned dataset (fig2|fig3|fig4|fig5)");
  figure_cmd->add_option("id", figure_id, "Figure id")->required();
  add_common(figure_cmd, figure_opts);

  CommonOptions sweep_opts;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate the illumination report over 1-2 config axes");
  add_common(sweep_cmd, sweep_opts);

  CommonOptions spectrum_opts;
  std::vector<double> spectrum_omegas;
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Output spectral densities at given frequencies");
  spectrum_cmd->add_option("--omega", spectrum_omegas, "Evaluation frequency (repeatable)");
  add_common(spectrum_cmd, spectrum_opts);

  CommonOptions ent_opts;
  std::vector<double> ent_omegas;
  CLI::App* ent_cmd = app.add_subcommand(
      "entanglement", "Per-frequency logarithmic negativity at given frequencies");
  ent_cmd->add_option("--omega", ent_omegas, "Evaluation frequency (repeatable)");
  add_common(ent_cmd, ent_opts);

  CommonOptions snr_opts;
  CLI::App* snr_cmd =
      app.add_subcommand("snr", "Signal-to-noise report for the configured filter");
  add_common(snr_cmd, snr_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (figure_cmd->parsed()) {
      const json overrides = load_overrides(figure_opts);
      const qioms::Dataset ds = qioms::run_figure(figure_id, overrides);
      // figure defaults + overrides, resolved again only for the output sink
      const qioms::RunConfig config = qioms::RunConfig::from_json(qioms::merge_config(
          qioms::merge_config(qioms::default_config_json(), qioms::figure_defaults_json(figure_id)),
          overrides));
      emit(ds, config);
    } else if (sweep_cmd->parsed()) {
      const qioms::RunConfig config = resolve_config(sweep_opts);
      emit(qioms::run_sweep(config), config);
    } else if (spectrum_cmd->parsed()) {
      if (spectrum_omegas.empty()) spectrum_omegas.push_back(0.0);
      const qioms::RunConfig config = resolve_config(spectrum_opts);
      emit(qioms::run_spectrum(config, spectrum_omegas), config);
    } else if (ent_cmd->parsed()) {
      if (ent_omegas.empty()) ent_omegas.push_back(0.0);
      const qioms::RunConfig config = resolve_config(ent_opts);
      emit(qioms::run_entanglement(config, ent_omegas), config);
    } else if (snr_cmd->parsed()) {
      const qioms::RunConfig config = resolve_config(snr_opts);
      emit(qioms::run_snr(config), config);
    }
  } catch (const qioms::ConfigError& e) {
    std::cerr << "qi-oms: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qioms::UnsupportedConfigurationError& e) {
    std::cerr << "qi-oms: unsupported configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qi-oms: invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qioms::AccuracyError& e) {
    std::cerr << "qi-oms: quadrature failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qioms::SingularityError& e) {
    std::cerr << "qi-oms: singular response: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qi-oms: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
