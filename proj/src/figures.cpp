#include "qioms/figures.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <thread>

#include "qioms/delay.hpp"
#include "qioms/entanglement.hpp"
#include "qioms/errors.hpp"
#include "qioms/illumination.hpp"
#include "qioms/version.hpp"

namespace qioms {

namespace {

using nlohmann::json;

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<std::size_t>(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(count);  // drain remaining work
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void stamp_metadata(Dataset& ds, const RunConfig& config, const std::string& command,
                    const Stopwatch& watch) {
  ds.set_meta("tool", "qi-oms");
  ds.set_meta("version", kVersion);
  ds.set_meta("command", command);
  ds.set_meta("config", config.resolved().dump());
  ds.set_meta("wall_time_s", format_number(watch.seconds()));
}

double resolve_delay(const RunConfig& config, const SystemParams& params, double sigma) {
  if (sigma == 0.0) return 0.0;  // monochromatic: the delay phase drops out
  switch (config.delay) {
    case DelayMode::Zero:
      return 0.0;
    case DelayMode::Analytic:
      return optimal_delay_analytic(params);
    case DelayMode::Numeric:
      return optimal_delay_numeric(params, config.illumination, sigma, ScanSpec{},
                                   config.tolerance)
          .argmax;
  }
  return 0.0;
}

const SweepAxis* find_axis(const RunConfig& config, const std::string& name) {
  for (const auto& axis : config.axes) {
    if (axis.name == name) return &axis;
  }
  return nullptr;
}

void require_axes(const RunConfig& config, const std::string& id,
                  std::initializer_list<const char*> allowed) {
  for (const auto& axis : config.axes) {
    bool ok = false;
    for (const char* name : allowed) ok = ok || axis.name == name;
    if (!ok) {
      std::string names;
      for (const char* name : allowed) names += std::string(names.empty() ? "" : ", ") + name;
      throw ConfigError("figure " + id + " accepts only the axes {" + names + "}, got \"" +
                        axis.name + "\"");
    }
  }
}

double nan_or(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

// fig2: spectra and entanglement over an omega grid covering both peaks.
Dataset figure_spectrum(const RunConfig& config) {
  require_axes(config, "fig2", {"omega"});
  const SystemParams params = config.materialize_system();
  std::vector<double> grid;
  if (const SweepAxis* axis = find_axis(config, "omega")) {
    grid = axis->grid();
  } else {
    // coarse band plus a refinement window around the width-gamma resonance
    for (int i = 0; i <= 1400; ++i) grid.push_back(-0.5 + 3.5 * i / 1400.0);
    const double lo = params.delta - 25.0 * params.gamma;
    const double hi = params.delta + 25.0 * params.gamma;
    for (int i = 0; i <= 400; ++i) grid.push_back(lo + (hi - lo) * i / 400.0);
    std::sort(grid.begin(), grid.end());
    // merge near-coincident points so plateaus cannot mask strict extrema
    std::vector<double> merged;
    for (double w : grid) {
      if (merged.empty() || w - merged.back() > 1e-9) merged.push_back(w);
    }
    grid = std::move(merged);
  }

  Dataset ds;
  ds.columns = {"omega", "n_plus", "n_minus", "e_n", "e_n_over_n_plus"};
  ds.rows.resize(grid.size());
  parallel_for(grid.size(), config.workers, [&](std::size_t i) {
    const double w = grid[i];
    const SpectralPoint pt = output_spectra(params, w);
    const auto en = en_spectrum(params, std::span<const double>(&w, 1)).front();
    ds.rows[i] = {w, pt.n_plus, pt.n_minus, en.e_n, nan_or(en.ratio)};
  });
  return ds;
}

// fig3: figure of merit and n+[0] over the cooperativity plane at sigma = 0.
Dataset figure_cooperativity_map(const RunConfig& config) {
  require_axes(config, "fig3", {"c1", "c2"});
  SweepAxis default_axis{"c1", 1.0, 1e3, 25, true};
  const SweepAxis* ax1 = find_axis(config, "c1");
  const SweepAxis* ax2 = find_axis(config, "c2");
  if (!ax1) ax1 = &default_axis;
  SweepAxis default_axis2 = *ax1;
  default_axis2.name = "c2";
  if (!ax2) ax2 = &default_axis2;

  const auto grid1 = ax1->grid();
  const auto grid2 = ax2->grid();
  Dataset ds;
  ds.columns = {"c1", "c2", "f_merit", "n_plus_0", "stable"};
  ds.rows.resize(grid1.size() * grid2.size());
  parallel_for(ds.rows.size(), config.workers, [&](std::size_t idx) {
    const double c1 = grid1[idx / grid2.size()];
    const double c2 = grid2[idx % grid2.size()];
    RunConfig point = config;
    point.c1 = c1;
    point.c2 = c2;
    const SystemParams params = point.materialize_system();
    const IlluminationReport report =
        figure_of_merit(params, config.illumination, FilterSpec{0.0, 0.0}, config.tolerance);
    ds.rows[idx] = {c1, c2, nan_or(report.f_merit), output_spectra(params, 0.0).n_plus,
                    is_dynamically_stable(params) ? 1.0 : 0.0};
  });
  return ds;
}

// fig4: SNR and F versus bandwidth for zero and optimized delay.
Dataset figure_bandwidth_scan(const RunConfig& config) {
  require_axes(config, "fig4", {"sigma"});
  SweepAxis default_axis{"sigma", 0.05, 2.0, 40, false};
  const SweepAxis* axis = find_axis(config, "sigma");
  if (!axis) axis = &default_axis;
  const auto grid = axis->grid();

  const SystemParams params = config.materialize_system();
  Dataset ds;
  ds.columns = {"sigma", "snr_td0", "snr_topt", "f_td0", "f_topt"};
  ds.rows.resize(grid.size());
  parallel_for(grid.size(), config.workers, [&](std::size_t i) {
    const double sigma = grid[i];
    const double t_opt = resolve_delay(config, params, sigma);
    const IlluminationReport at_zero =
        figure_of_merit(params, config.illumination, FilterSpec{sigma, 0.0}, config.tolerance);
    const IlluminationReport at_opt =
        figure_of_merit(params, config.illumination, FilterSpec{sigma, t_opt}, config.tolerance);
    ds.rows[i] = {sigma, at_zero.snr_qi, at_opt.snr_qi, nan_or(at_zero.f_merit),
                  nan_or(at_opt.f_merit)};
  });
  return ds;
}

// fig5: error probabilities versus mode-pair count. Both SNRs are linear in
// M, so the band moments are computed once at M = 1 and rescaled.
Dataset figure_error_probability(const RunConfig& config) {
  require_axes(config, "fig5", {"log10_m"});
  SweepAxis default_axis{"log10_m", 0.0, 8.0, 9, false};
  const SweepAxis* axis = find_axis(config, "log10_m");
  if (!axis) axis = &default_axis;
  const auto grid = axis->grid();

  const SystemParams params = config.materialize_system();
  RunConfig unit = config;
  unit.illumination.m_pairs = 1.0;
  const double t_d = resolve_delay(config, params, config.sigma);
  const IlluminationReport per_pair =
      figure_of_merit(params, unit.illumination, FilterSpec{config.sigma, t_d}, config.tolerance);

  Dataset ds;
  ds.columns = {"log10_m", "p_qi", "p_coh"};
  ds.rows.reserve(grid.size());
  for (double log10_m : grid) {
    const double m = std::round(std::pow(10.0, log10_m));
    ds.rows.push_back({log10_m, error_probability(per_pair.snr_qi * m),
                       error_probability(per_pair.snr_coherent * m)});
  }
  return ds;
}

}  // namespace

json default_config_json() {
  return json{
      {"system",
       {{"kappa", 1.0},
        {"gamma", 1e-3},
        {"delta", 1.5},
        {"c1", 500.0},
        {"c2", 500.0},
        {"n_b", 61.945},
        {"n_plus_in", 0.0},
        {"n_minus_in", 0.0}}},
      {"illumination", {{"eta", 0.07}, {"n_B", 610.0}, {"m_pairs", 1.0}}},
      {"filter", {{"sigma", 1.0}, {"delay", "analytic"}}},
      {"output", {{"path", ""}, {"format", "csv"}}},
      {"tolerance", 1e-9},
      {"workers", 0}};
}

json figure_defaults_json(const std::string& id) {
  if (id == "fig2") {
    return json{{"system", {{"g1", 1.0}, {"g2", 1.0}}}, {"filter", {{"sigma", 0.0}, {"delay", "zero"}}}};
  }
  if (id == "fig3") {
    return json{{"filter", {{"sigma", 0.0}, {"delay", "zero"}}}};
  }
  if (id == "fig4") {
    return json{{"filter", {{"sigma", 1.0}, {"delay", "analytic"}}}};
  }
  if (id == "fig5") {
    return json{{"filter", {{"sigma", 1.0}, {"delay", "analytic"}}}};
  }
  throw ConfigError("unknown figure id \"" + id + "\" (expected fig2|fig3|fig4|fig5)");
}

Dataset run_figure(const std::string& id, const json& overrides) {
  Stopwatch watch;
  json doc = merge_config(default_config_json(), figure_defaults_json(id));
  doc = merge_config(doc, overrides);
  const RunConfig config = RunConfig::from_json(doc);

  Dataset ds;
  if (id == "fig2") ds = figure_spectrum(config);
  else if (id == "fig3") ds = figure_cooperativity_map(config);
  else if (id == "fig4") ds = figure_bandwidth_scan(config);
  else ds = figure_error_probability(config);

  stamp_metadata(ds, config, "figure " + id, watch);
  return ds;
}

Dataset run_sweep(const RunConfig& config) {
  Stopwatch watch;
  if (config.axes.empty() || config.axes.size() > 2) {
    throw ConfigError("sweep requires 1 or 2 axes, got " + std::to_string(config.axes.size()));
  }
  std::vector<std::vector<double>> grids;
  for (const auto& axis : config.axes) {
    grids.push_back(axis.grid());
    if (grids.back().empty()) throw ConfigError("sweep axis \"" + axis.name + "\" is empty");
  }

  Dataset ds;
  for (const auto& axis : config.axes) ds.columns.push_back(axis.name);
  for (const char* c : {"snr_qi", "snr_coh", "f_merit", "p_qi", "p_coh", "n_plus_0", "stable"}) {
    ds.columns.emplace_back(c);
  }

  const std::size_t inner = grids.size() == 2 ? grids[1].size() : 1;
  ds.rows.resize(grids[0].size() * inner);
  parallel_for(ds.rows.size(), config.workers, [&](std::size_t idx) {
    RunConfig point = config;
    std::vector<double> row;
    row.push_back(grids[0][idx / inner]);
    apply_axis_value(point, config.axes[0].name, grids[0][idx / inner]);
    if (grids.size() == 2) {
      row.push_back(grids[1][idx % inner]);
      apply_axis_value(point, config.axes[1].name, grids[1][idx % inner]);
    }
    const SystemParams params = point.materialize_system();
    const double t_d = resolve_delay(point, params, point.sigma);
    const IlluminationReport report = figure_of_merit(params, point.illumination,
                                                      FilterSpec{point.sigma, t_d},
                                                      point.tolerance);
    row.insert(row.end(),
               {report.snr_qi, report.snr_coherent, nan_or(report.f_merit), report.p_qi,
                report.p_coherent, output_spectra(params, 0.0).n_plus,
                is_dynamically_stable(params) ? 1.0 : 0.0});
    ds.rows[idx] = std::move(row);
  });

  stamp_metadata(ds, config, "sweep", watch);
  return ds;
}

Dataset run_spectrum(const RunConfig& config, std::span<const double> omegas) {
  Stopwatch watch;
  const SystemParams params = config.materialize_system();
  Dataset ds;
  ds.columns = {"omega", "n_plus", "n_minus", "re_x", "im_x"};
  for (double w : omegas) {
    const SpectralPoint pt = output_spectra(params, w);
    ds.rows.push_back({w, pt.n_plus, pt.n_minus, pt.x.real(), pt.x.imag()});
  }
  stamp_metadata(ds, config, "spectrum", watch);
  return ds;
}

Dataset run_entanglement(const RunConfig& config, std::span<const double> omegas) {
  Stopwatch watch;
  const SystemParams params = config.materialize_system();
  Dataset ds;
  ds.columns = {"omega", "e_n", "e_n_over_n_plus"};
  for (const auto& point : en_spectrum(params, omegas)) {
    ds.rows.push_back({point.omega, point.e_n, nan_or(point.ratio)});
  }
  stamp_metadata(ds, config, "entanglement", watch);
  return ds;
}

Dataset run_snr(const RunConfig& config) {
  Stopwatch watch;
  const SystemParams params = config.materialize_system();
  const double t_d = resolve_delay(config, params, config.sigma);
  const IlluminationReport report = figure_of_merit(params, config.illumination,
                                                    FilterSpec{config.sigma, t_d},
                                                    config.tolerance);
  Dataset ds;
  ds.columns = {"sigma", "t_d", "snr_qi", "snr_coh", "f_merit", "p_qi", "p_coh"};
  ds.rows.push_back({config.sigma, t_d, report.snr_qi, report.snr_coherent,
                     nan_or(report.f_merit), report.p_qi, report.p_coherent});
  stamp_metadata(ds, config, "snr", watch);
  return ds;
}

}  // namespace qioms
