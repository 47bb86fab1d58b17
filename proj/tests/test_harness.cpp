#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mddsim/config.hpp"
#include "mddsim/frames.hpp"
#include "mddsim/plot.hpp"
#include "mddsim/report.hpp"
#include "mddsim/simulate.hpp"

using namespace mddsim;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("configuration parsing and validation") {
  const SystemConfig defaults = system_config_from_json("{}");
  CHECK(defaults.bs_antennas == 32);
  CHECK(defaults.users == 8);
  CHECK(defaults.subcarriers_total == 96);
  CHECK(defaults.predictor_order == 7);
  CHECK(system_config_from_json("").frame_symbols == 28);

  const SystemConfig tuned =
      system_config_from_json(R"({"frame_symbols": 56, "users": 4})");
  CHECK(tuned.frame_symbols == 56);
  CHECK(tuned.users == 4);
  CHECK(tuned.bs_antennas == 32);

  CHECK_THROWS_AS(system_config_from_json(R"({"frame_symbol": 56})"), ConfigError);
  CHECK_THROWS_AS(system_config_from_json(R"({"users": "eight"})"), ConfigError);
  CHECK_THROWS_AS(system_config_from_json("[1,2]"), ConfigError);
  CHECK_THROWS_AS(system_config_from_json("{"), ConfigError);
  // Subcarrier split must stay consistent.
  CHECK_THROWS_AS(system_config_from_json(R"({"subcarriers_dl": 63})"), ConfigError);

  SystemConfig bad;
  bad.users = 64;  // more users than antennas
  CHECK(!validate(bad).empty());
  bad = SystemConfig{};
  bad.subcarriers_ul = 16;  // cannot carry 8 users x 4 taps
  CHECK(!validate(bad).empty());
  CHECK(validate(SystemConfig{}).empty());

  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(20.0) == doctest::Approx(0.1));
  CHECK(db_to_linear(-130.0) == doctest::Approx(1e-13));
  const SystemConfig cfg;
  CHECK(cfg.noise_watts() == doctest::Approx(std::pow(10.0, -12.4)));
}

TEST_CASE("configuration file loading") {
  const std::string path = "mddsim_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"frame_symbols": 56})";
  }
  CHECK(load_system_config(path).frame_symbols == 56);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_system_config("does_not_exist.json"), ConfigError);
}

TEST_CASE("velocity grids") {
  const auto grid = parse_velocities("20:20:300");
  REQUIRE(grid.size() == 15);
  CHECK(grid.front() == doctest::Approx(20.0));
  CHECK(grid.back() == doctest::Approx(300.0));
  CHECK(default_velocity_grid() == grid);

  const auto list = parse_velocities("100,250");
  REQUIRE(list.size() == 2);
  CHECK(list[0] == doctest::Approx(100.0));
  CHECK(list[1] == doctest::Approx(250.0));

  CHECK_THROWS_AS(parse_velocities("10:0:100"), ConfigError);
  CHECK_THROWS_AS(parse_velocities("300:20:100"), ConfigError);
  CHECK_THROWS_AS(parse_velocities("fast"), ConfigError);
  CHECK_THROWS_AS(parse_velocities(""), ConfigError);
}

TEST_CASE("frame averages weigh value by symbol share and tone share") {
  const SystemConfig cfg;
  SchemeRunResult run;
  run.schedule = build_schedule("tdd-1", cfg);
  run.trials = 1;

  auto add = [&](int symbol, ToneClass cls, Metric m, double value) {
    MetricRow r;
    r.user = 0;
    r.symbol_index = symbol;
    r.tone_class = cls;
    r.metric = m;
    r.value = value;
    run.rows.push_back(r);
  };
  add(15, ToneClass::All, Metric::RateMcLb, 2.0);  // weight 1, all 96 tones
  add(8, ToneClass::All, Metric::RateMcLb, 1.0);   // weight 0.5
  add(15, ToneClass::Dl, Metric::RateMcLb, 3.0);   // 64 of 96 tones
  add(15, ToneClass::Ul, Metric::RateMcLb, 3.0);   // 32 of 96 tones
  add(15, ToneClass::All, Metric::RateClosed, 9.0);  // other metric: ignored

  const double expected =
      (2.0 * 1.0 * 96 + 1.0 * 0.5 * 96 + 3.0 * 1.0 * 64 + 3.0 * 1.0 * 32) /
      (28.0 * 96.0);
  CHECK(frame_average_rate(cfg, run, Metric::RateMcLb) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(frame_average_rate(cfg, run, Metric::RateClosed) ==
        doctest::Approx(9.0 * 96 / (28.0 * 96.0)).epsilon(1e-12));
  CHECK_THROWS_AS(frame_average_rate(cfg, run, Metric::Nmse), std::invalid_argument);
}

TEST_CASE("scheme runs are deterministic for any thread count") {
  const SystemConfig cfg;
  const FrameSchedule sched = build_schedule("mdd-2", cfg);

  const SchemeRunResult serial = run_scheme(cfg, sched, 100.0, 70, 7, 4, 1);
  const SchemeRunResult threaded = run_scheme(cfg, sched, 100.0, 70, 7, 4, 3);
  const SchemeRunResult repeat = run_scheme(cfg, sched, 100.0, 70, 7, 4, 1);

  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].value == threaded.rows[i].value);
    CHECK(serial.rows[i].value == repeat.rows[i].value);
    CHECK(serial.rows[i].symbol_index == threaded.rows[i].symbol_index);
  }

  const SchemeRunResult other_seed = run_scheme(cfg, sched, 100.0, 70, 8, 4, 1);
  bool any_differs = false;
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    any_differs |= serial.rows[i].value != other_seed.rows[i].value;
  CHECK(any_differs);

  CHECK_THROWS_AS(run_scheme(cfg, sched, 100.0, 0, 7, 4, 1), std::invalid_argument);
}

TEST_CASE("one trial is enough to produce finite metrics") {
  const SystemConfig cfg;
  const FrameSchedule sched = build_schedule("mdd-1(1)", cfg);
  const SchemeRunResult run = run_scheme(cfg, sched, 100.0, 1, 3, 2, 1);
  REQUIRE(!run.rows.empty());
  for (const auto& r : run.rows) CHECK(std::isfinite(r.value));
}

TEST_CASE("row bookkeeping covers every scheduled data symbol") {
  const SystemConfig cfg;
  const FrameSchedule sched = build_schedule("mdd-2", cfg);
  const SchemeRunResult run = run_scheme(cfg, sched, 100.0, 20, 1, 2, 1);

  // 27 downlink symbols + 21 uplink symbols, 3 metrics, 8 users each.
  CHECK(run.rows.size() == (27 + 21) * 3 * 8);
  for (const auto& sp : sched.symbols) {
    if (sp.dl_data) {
      double sum = 0.0;
      int found = 0;
      for (const auto& r : run.rows)
        if (r.metric == Metric::RateMcLb && r.symbol_index == sp.index &&
            r.downlink) {
          sum += r.value;
          ++found;
          CHECK(r.tone_class == ToneClass::Dl);
        }
      CHECK(found == 8);
      CHECK(run.sum_over_users(Metric::RateMcLb, sp.index, ToneClass::Dl, true) ==
            doctest::Approx(sum).epsilon(1e-12));
    }
    if (sp.ul_data) {
      CHECK(run.sum_over_users(Metric::Nmse, sp.index, ToneClass::Ul, false) > 0.0);
    }
  }
  // Channel aging: once the observation window is frozen (the TDD downlink
  // phase reuses the last uplink window), prediction error grows with age.
  const FrameSchedule tdd2 = build_schedule("tdd-2", cfg);
  const SchemeRunResult aged = run_scheme(cfg, tdd2, 100.0, 20, 1, 2, 1);
  const double early = aged.sum_over_users(Metric::Nmse, 17, ToneClass::All, true);
  const double late = aged.sum_over_users(Metric::Nmse, 27, ToneClass::All, true);
  CHECK(early > 0.0);
  CHECK(early < late);
}

TEST_CASE("doubling the trial count leaves aggregates stable") {
  const SystemConfig cfg;
  const FrameSchedule sched = build_schedule("mdd-1(7)", cfg);
  const SchemeRunResult a = run_scheme(cfg, sched, 100.0, 60, 1, 4, 0);
  const SchemeRunResult b = run_scheme(cfg, sched, 100.0, 120, 1, 4, 0);
  const double ra = frame_average_rate(cfg, a, Metric::RateMcLb);
  const double rb = frame_average_rate(cfg, b, Metric::RateMcLb);
  CHECK(ra == doctest::Approx(rb).epsilon(0.10));
}

TEST_CASE("CSV serialization is stable and well-formed") {
  const SystemConfig cfg;
  const FrameSchedule sched = build_schedule("tdd-1", cfg);
  std::vector<SchemeRunResult> results = {run_scheme(cfg, sched, 40.0, 20, 5, 2, 1)};

  const std::string csv = to_csv(results);
  const std::string header =
      "scheme,velocity_kmh,user,symbol_index,subcarrier_class,metric,value,"
      "trials,seed";
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == header);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
    CHECK(line.substr(0, 6) == "TDD-1,");
  }
  CHECK(rows == results[0].rows.size());
  CHECK(csv == to_csv(results));  // byte-stable

  const std::string path = "mddsim_test_out.csv";
  write_csv(path, results);
  CHECK(slurp(path) == csv);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_csv("no_such_dir/x.csv", results), std::runtime_error);
}

TEST_CASE("sweeps cover the scheme-velocity grid") {
  const SystemConfig cfg;
  RunSpec spec;
  spec.schemes = {"tdd-1", "mdd-1(1)"};
  spec.velocities_kmh = {60.0, 140.0};
  spec.trials = 10;
  spec.seed = 11;
  spec.eval_tones_per_class = 2;
  spec.threads = 1;

  const auto results = run_sweep(cfg, spec);
  REQUIRE(results.size() == 4);
  CHECK(results[0].schedule.name == "TDD-1");
  CHECK(results[0].velocity_kmh == doctest::Approx(60.0));
  CHECK(results[1].velocity_kmh == doctest::Approx(140.0));
  CHECK(results[2].schedule.name == "MDD-1(1)");
  for (const auto& r : results) {
    CHECK(r.trials == 10);
    CHECK(!r.rows.empty());
  }

  RunSpec empty;
  CHECK_THROWS_AS(run_sweep(cfg, empty), ConfigError);
}

TEST_CASE("SVG line charts") {
  Series filled{"reference", {1.0, 2.0, 3.0}, {1.0, 4.0, 9.0}};
  Series empty{"skipped", {}, {}};
  const std::string svg = line_chart_svg("title", "x", "y", {filled, empty});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("reference") != std::string::npos);
  CHECK(svg.find("title") != std::string::npos);

  const std::string path = "mddsim_test_plot.svg";
  write_svg(path, svg);
  CHECK(slurp(path) == svg);
  std::remove(path.c_str());
}
