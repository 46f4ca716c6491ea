#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qioms/config.hpp"
#include "qioms/errors.hpp"
#include "qioms/figures.hpp"

using namespace qioms;
using nlohmann::json;

TEST_CASE("config defaults materialize and echo") {
  const RunConfig config = RunConfig::from_json(default_config_json());
  const SystemParams p = config.materialize_system();
  CHECK(p.g1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(p.g2 == doctest::Approx(p.g1));
  CHECK(config.illumination.n_background == 610.0);

  const json echo = config.resolved();
  CHECK(echo["system"]["c1"].get<double>() == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(echo["filter"]["delay"] == "analytic");
  CHECK(echo["tolerance"].get<double>() == 1e-9);
}

TEST_CASE("unknown keys are rejected with their path") {
  json doc = default_config_json();
  doc["system"]["typo_key"] = 1.0;
  CHECK_THROWS_WITH_AS(static_cast<void>(RunConfig::from_json(doc)),
                       doctest::Contains("system.typo_key"), ConfigError);

  json top = default_config_json();
  top["nonsense"] = 1;
  CHECK_THROWS_AS(static_cast<void>(RunConfig::from_json(top)), ConfigError);
}

TEST_CASE("coupling and cooperativity keys are mutually exclusive") {
  json doc;
  doc["system"] = {{"g1", 0.5}, {"c1", 100.0}};
  CHECK_THROWS_AS(static_cast<void>(RunConfig::from_json(doc)), ConfigError);

  // layered configs drop the stale alternative
  const json merged = merge_config(default_config_json(), json{{"system", {{"g1", 0.5}}}});
  CHECK(!merged["system"].contains("c1"));
  const RunConfig config = RunConfig::from_json(merged);
  CHECK(config.materialize_system().g1 == 0.5);
}

TEST_CASE("set overrides parse into nested patches") {
  const json patch = parse_set_overrides(
      {"system.g1=0.25", "filter.delay=numeric", "output.format=json", "workers=3"});
  CHECK(patch["system"]["g1"].get<double>() == 0.25);
  CHECK(patch["filter"]["delay"] == "numeric");
  CHECK(patch["workers"].get<int>() == 3);
  CHECK_THROWS_AS(parse_set_overrides({"no_equals"}), ConfigError);
  CHECK_THROWS_AS(parse_set_overrides({"=5"}), ConfigError);
}

TEST_CASE("invalid parameter values become config errors") {
  json doc = default_config_json();
  doc["system"]["gamma"] = -1.0;
  const RunConfig config = RunConfig::from_json(doc);
  CHECK_THROWS_AS(static_cast<void>(config.materialize_system()), ConfigError);
}

TEST_CASE("sweep axis grids") {
  SweepAxis lin{"eta", 0.0, 1.0, 5, false};
  const auto lg = lin.grid();
  REQUIRE(lg.size() == 5);
  CHECK(lg.front() == 0.0);
  CHECK(lg.back() == 1.0);

  SweepAxis log{"c1", 1.0, 1000.0, 4, true};
  const auto gg = log.grid();
  CHECK(gg[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(gg[2] == doctest::Approx(100.0).epsilon(1e-12));

  SweepAxis bad{"c1", -1.0, 10.0, 4, true};
  CHECK_THROWS_AS(static_cast<void>(bad.grid()), ConfigError);
  SweepAxis empty{"c1", 1.0, 10.0, 0, false};
  CHECK_THROWS_AS(static_cast<void>(empty.grid()), ConfigError);
}

TEST_CASE("dataset csv round trip") {
  Dataset ds;
  ds.columns = {"a", "b"};
  ds.rows = {{1.0, -2.5e-7}, {3.14159, 610.0}};
  ds.set_meta("tool", "qi-oms");
  ds.set_meta("config", "{\"x\": 1}");

  std::stringstream buffer;
  ds.write_csv(buffer);
  const Dataset back = Dataset::read_csv(buffer);
  CHECK(back.columns == ds.columns);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0][1] == ds.rows[0][1]);
  CHECK(back.rows[1][0] == ds.rows[1][0]);
  REQUIRE(back.find_meta("config") != nullptr);
  CHECK(*back.find_meta("config") == "{\"x\": 1}");
}

TEST_CASE("dataset json round trip keeps non-finite cells") {
  Dataset ds;
  ds.columns = {"v"};
  ds.rows = {{std::nan("")}, {7.0}};
  std::stringstream buffer;
  ds.write_json(buffer);
  const Dataset back = Dataset::read_json(buffer);
  REQUIRE(back.rows.size() == 2);
  CHECK(std::isnan(back.rows[0][0]));
  CHECK(back.rows[1][0] == 7.0);
}

TEST_CASE("sweep produces axis-major deterministic rows") {
  json doc = default_config_json();
  doc["filter"]["sigma"] = 0.0;
  doc["sweep"]["axes"] = json::array({{{"name", "c1"}, {"min", 10.0}, {"max", 1000.0}, {"points", 3}, {"scale", "log"}},
                                      {{"name", "c2"}, {"min", 10.0}, {"max", 1000.0}, {"points", 3}, {"scale", "log"}}});
  const RunConfig config = RunConfig::from_json(doc);
  const Dataset ds = run_sweep(config);
  REQUIRE(ds.rows.size() == 9);
  CHECK(ds.columns.front() == "c1");
  // axis-major: first axis constant over inner blocks
  CHECK(ds.rows[0][0] == doctest::Approx(10.0));
  CHECK(ds.rows[2][0] == doctest::Approx(10.0));
  CHECK(ds.rows[3][0] == doctest::Approx(100.0));
  CHECK(ds.rows[0][1] == doctest::Approx(10.0));
  CHECK(ds.rows[1][1] == doctest::Approx(100.0));

  // byte-identical bodies across runs and worker counts
  const auto body = [](const Dataset& d) {
    std::stringstream out;
    Dataset copy = d;
    copy.metadata.clear();
    copy.write_csv(out);
    return out.str();
  };
  RunConfig serial = config;
  serial.workers = 1;
  RunConfig wide = config;
  wide.workers = 7;
  CHECK(body(run_sweep(serial)) == body(run_sweep(wide)));
  CHECK(body(run_sweep(config)) == body(run_sweep(config)));
}

TEST_CASE("single-axis sweep") {
  json doc = default_config_json();
  doc["sweep"]["axes"] = json::array(
      {{{"name", "sigma"}, {"min", 0.5}, {"max", 2.0}, {"points", 4}, {"scale", "linear"}}});
  const Dataset ds = run_sweep(RunConfig::from_json(doc));
  REQUIRE(ds.rows.size() == 4);
  REQUIRE(ds.columns.size() == 8);  // axis + seven report columns
  CHECK(ds.columns[0] == "sigma");
  // at the analytic delay the advantage degrades slowly but monotonically
  for (std::size_t i = 1; i < ds.rows.size(); ++i) CHECK(ds.rows[i][1] < ds.rows[i - 1][1]);
}

TEST_CASE("errors raised inside sweep workers propagate") {
  json doc = default_config_json();
  doc["workers"] = 4;
  doc["sweep"]["axes"] = json::array(
      {{{"name", "gamma"}, {"min", -0.001}, {"max", 0.001}, {"points", 8}, {"scale", "linear"}}});
  const RunConfig config = RunConfig::from_json(doc);
  CHECK_THROWS_AS(static_cast<void>(run_sweep(config)), ConfigError);
}

TEST_CASE("sweep axis count limits") {
  json doc = default_config_json();
  const RunConfig none = RunConfig::from_json(doc);
  CHECK_THROWS_AS(static_cast<void>(run_sweep(none)), ConfigError);

  doc["sweep"]["axes"] = json::array({{{"name", "c1"}, {"min", 1.0}, {"max", 2.0}, {"points", 2}},
                                      {{"name", "c2"}, {"min", 1.0}, {"max", 2.0}, {"points", 2}},
                                      {{"name", "eta"}, {"min", 0.0}, {"max", 0.5}, {"points", 2}}});
  const RunConfig three = RunConfig::from_json(doc);
  CHECK_THROWS_AS(static_cast<void>(run_sweep(three)), ConfigError);
}

TEST_CASE("unknown figure id is a usage error") {
  CHECK_THROWS_AS(static_cast<void>(run_figure("fig9")), ConfigError);
  CHECK_THROWS_AS(static_cast<void>(figure_defaults_json("f2")), ConfigError);
}

TEST_CASE("fig2 dataset covers both peaks") {
  // override the grid for speed: coarse band + fine window near the line
  json overrides;
  overrides["workers"] = 2;
  const Dataset ds = run_figure("fig2", overrides);
  CHECK(ds.columns == std::vector<std::string>{"omega", "n_plus", "n_minus", "e_n",
                                               "e_n_over_n_plus"});
  REQUIRE(ds.rows.size() > 100);

  int maxima = 0;
  double where[2] = {0.0, 0.0};
  for (std::size_t i = 1; i + 1 < ds.rows.size(); ++i) {
    if (ds.rows[i][1] > ds.rows[i - 1][1] && ds.rows[i][1] > ds.rows[i + 1][1]) {
      if (maxima < 2) where[maxima] = ds.rows[i][0];
      ++maxima;
    }
  }
  CHECK(maxima == 2);
  CHECK(std::abs(where[0]) < 0.1);
  CHECK(std::abs(where[1] - 1.5) < 0.1);

  // metadata carries the resolved config
  REQUIRE(ds.find_meta("config") != nullptr);
  const json echo = json::parse(*ds.find_meta("config"));
  CHECK(echo["system"]["g1"].get<double>() == 1.0);
}

TEST_CASE("fig4 columns and delay benefit") {
  json overrides;
  overrides["sweep"]["axes"] = json::array(
      {{{"name", "sigma"}, {"min", 0.5}, {"max", 1.5}, {"points", 3}, {"scale", "linear"}}});
  const Dataset ds = run_figure("fig4", overrides);
  CHECK(ds.columns ==
        std::vector<std::string>{"sigma", "snr_td0", "snr_topt", "f_td0", "f_topt"});
  REQUIRE(ds.rows.size() == 3);
  for (const auto& row : ds.rows) CHECK(row[2] >= row[1]);
  CHECK(ds.rows[1][0] == doctest::Approx(1.0));
  CHECK(ds.rows[1][4] == doctest::Approx(1.481).epsilon(2e-3));
}

TEST_CASE("fig5 error probabilities are ordered") {
  const Dataset ds = run_figure("fig5");
  CHECK(ds.columns == std::vector<std::string>{"log10_m", "p_qi", "p_coh"});
  REQUIRE(ds.rows.size() == 9);
  for (const auto& row : ds.rows) CHECK(row[1] <= row[2]);
  for (std::size_t i = 1; i < ds.rows.size(); ++i) {
    CHECK(ds.rows[i][1] < ds.rows[i - 1][1]);
    CHECK(ds.rows[i][2] < ds.rows[i - 1][2]);
  }
}

TEST_CASE("fig3 stability flag matches the cooperativity ordering at large C") {
  json overrides;
  overrides["workers"] = 2;
  overrides["sweep"]["axes"] = json::array(
      {{{"name", "c1"}, {"min", 10.0}, {"max", 1000.0}, {"points", 5}, {"scale", "log"}},
       {{"name", "c2"}, {"min", 10.0}, {"max", 1000.0}, {"points", 5}, {"scale", "log"}}});
  const Dataset ds = run_figure("fig3", overrides);
  CHECK(ds.columns ==
        std::vector<std::string>{"c1", "c2", "f_merit", "n_plus_0", "stable"});
  REQUIRE(ds.rows.size() == 25);
  for (const auto& row : ds.rows) {
    if (row[0] > row[1] + 15.0) CHECK(row[4] == 1.0);   // comfortably stable side
    if (row[1] > row[0] + 15.0) CHECK(row[4] == 0.0);   // comfortably unstable side
    CHECK(row[3] > 0.0);
  }
}

TEST_CASE("figure overrides reach the model parameters") {
  json overrides;
  overrides["system"]["n_b"] = 0.0;
  overrides["sweep"]["axes"] = json::array(
      {{{"name", "log10_m"}, {"min", 0.0}, {"max", 2.0}, {"points", 2}, {"scale", "linear"}}});
  const Dataset cold = run_figure("fig5", overrides);
  const Dataset warm = run_figure("fig5", json{{"sweep", {{"axes", overrides["sweep"]["axes"]}}}});
  REQUIRE(cold.rows.size() == 2);
  REQUIRE(warm.rows.size() == 2);
  CHECK(cold.rows[1][1] < warm.rows[1][1]);  // colder mechanics detect better
}
