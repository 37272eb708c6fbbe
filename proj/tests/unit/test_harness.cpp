#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "llg/harness/config.hpp"
#include "llg/harness/experiments.hpp"
#include "llg/harness/parallel.hpp"
#include "llg/harness/report.hpp"

using namespace llg;
using namespace llg::harness;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("llg-harness-" + name);
  std::filesystem::remove_all(p);
  return p;
}

/// Small, fast configuration for orchestration tests.
ExperimentConfig tiny(const std::string& kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.grid.points = 16;
  c.T = 0.05;
  c.dt = 0.005;
  c.epsilons = {0.1, 0.05};
  c.dt_list = {0.01, 0.005};
  c.levels = {1, 2};
  c.rate_level = 1;
  return c;
}

}  // namespace

TEST_CASE("config parsing and validation", "[config]") {
  const ExperimentConfig c = parse_config(json::parse(R"({"kind":"sweep","epsilons":[0.2,0.1],"grid":{"points":16}})"));
  CHECK(c.kind == "sweep");
  CHECK(c.grid.points == 16);
  CHECK(c.epsilons == std::vector<double>{0.2, 0.1});

  CHECK_THROWS_AS(parse_config(json::parse(R"({"kind":"sweep","bogus":1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"grid":{"pts":16}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"epsilons":[0.1,0.2]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"epsilons":[0.1,0.1]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"epsilons":[1.5]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"tolerances":{"slope_low":-1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"tolerances":{"slope_low":1.5,"slope_high":1.2}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"kind":"dance"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"grid":{"points":12}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"T":"long"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"shell_range":[3,1]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"([1,2])")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config serializes and parses back", "[config]") {
  ExperimentConfig c = tiny("truncate");
  c.shell_range = lp::ShellRange{0, 3};
  c.datum.family = "shell_random/v1";
  c.datum.seed = 42;
  c.tol.rough_ratio = 3.0;
  const ExperimentConfig back = parse_config(to_json(c));
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("shipped example configs load", "[config]") {
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(LLG_CONFIG_DIR) / "examples")) {
    INFO(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
  }
}

TEST_CASE("plot data round-trips bit exactly", "[report]") {
  ExperimentReport r;
  Curve& c = r.curve("values", "x", "y");
  for (int i = 0; i < 50; ++i) {
    c.x.push_back(std::ldexp(1.0, -i) / 3.0);
    c.y.push_back(std::nextafter(std::sqrt(i + 0.1), 0.0) * (i % 2 ? -1 : 1));
  }
  c.y[7] = 1e-310;  // subnormal
  const auto dir = scratch("plot");
  const auto files = emit_plotdata(r, dir);
  REQUIRE(files.size() == 1);
  const Curve back = read_plotdata(files[0]);
  CHECK(back.name == "values");
  CHECK(back.x_label == "x");
  CHECK(back.y_label == "y");
  CHECK(back.x == c.x);
  CHECK(back.y == c.y);
  std::filesystem::remove_all(dir);
}

TEST_CASE("empty report writes header-only plot files", "[report]") {
  const ExperimentReport r = empty_report("truncate");
  const auto dir = scratch("empty");
  const auto files = emit_plotdata(r, dir);
  CHECK(files.size() == 4);
  for (const auto& f : files) {
    std::ifstream is(f);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
      CHECK(line.rfind("# ", 0) == 0);
      ++lines;
    }
    CHECK(lines == 2);
    CHECK(read_plotdata(f).x.empty());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("NDJSON report has one record per line", "[report]") {
  ExperimentReport r = empty_report("sweep");
  r.metadata = {{"grid", "8x8x8"}};
  r.check("first", true, 1.0);
  r.check("second", false, 2.0, "why");
  r.records.push_back({{"type", "run"}, {"trajectory_key", "abc"}});
  std::ostringstream os;
  write_ndjson(r, os);
  std::istringstream is(os.str());
  std::vector<json> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(json::parse(l));
  REQUIRE(lines.size() == 6);
  CHECK(lines.front()["type"] == "metadata");
  CHECK(lines[1]["type"] == "criterion");
  CHECK(lines[2]["pass"] == false);
  CHECK(lines.back()["type"] == "summary");
  CHECK(lines.back()["all_pass"] == false);
  CHECK_FALSE(r.all_pass());
  CHECK(environment_metadata().contains("simd"));
}

TEST_CASE("loglog slope fits power laws", "[experiments]") {
  const std::vector<double> x{0.1, 0.05, 0.025};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  CHECK(loglog_slope(x, y) == Catch::Approx(1.7).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(loglog_slope({1.0, 0.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("parallel_map keeps order and propagates errors", "[parallel]") {
  const auto sq = parallel_map(3, 10, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 10; ++i) CHECK(sq[i] == i * i);
  CHECK_THROWS_AS(parallel_map(2, 4,
                               [](std::size_t i) {
                                 if (i == 2) throw DomainError("boom");
                                 return 0;
                               }),
                  DomainError);
}

TEST_CASE("zero datum: the sweep reports e = 0 and passes", "[experiments]") {
  ExperimentConfig c = tiny("sweep");
  c.datum.family = "zero";
  const ExperimentReport r = run_inviscid_sweep(c);
  CHECK(r.all_pass());
  for (double e : r.curves.front().y) CHECK(e == 0.0);
}

TEST_CASE("reports are identical across worker counts and reruns", "[experiments][determinism]") {
  ExperimentConfig c = tiny("sweep");
  c.regime = "rough";
  c.tol.rough_ratio = 1.1;
  const ExperimentReport a = run_inviscid_sweep(c);
  const ExperimentReport again = run_inviscid_sweep(c);
  c.jobs = 2;
  const ExperimentReport b = run_inviscid_sweep(c);
  REQUIRE(a.curves.size() == b.curves.size());
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    CHECK(a.curves[i].y == b.curves[i].y);
    CHECK(a.curves[i].y == again.curves[i].y);
  }
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i] == b.records[i]);
}

TEST_CASE("sweep records trace every number to a run", "[experiments]") {
  const ExperimentReport r = run_inviscid_sweep(tiny("sweep"));
  std::set<std::string> keys;
  for (const auto& rec : r.records)
    if (rec["type"] == "run") keys.insert(rec["trajectory_key"].get<std::string>());
  int errors = 0;
  for (const auto& rec : r.records)
    if (rec["type"] == "inviscid_error") {
      ++errors;
      CHECK(keys.count(rec["trajectory_key"].get<std::string>()) == 1);
      CHECK(keys.count(rec["reference_key"].get<std::string>()) == 1);
    }
  CHECK(errors == 2);
  for (const char* k : {"grid", "dt", "T", "shell_range", "datum", "environment"}) CHECK(r.metadata.contains(k));
}

TEST_CASE("truncation: band-limited data make terms 1 and 3 vanish", "[experiments]") {
  ExperimentConfig c = tiny("truncate");
  // Datum below the smooth cutoff P_{<=1}; P_{<=K} is the identity there for K >= 2.
  c.datum.cutoff = 1;
  c.levels = {2, 3};
  const ExperimentReport r = run_truncation_study(c);
  for (const auto& rec : r.records)
    if (rec["type"] == "truncation_terms") {
      CHECK(rec["term1"].get<double>() <= 1e-14);
      CHECK(rec["term3"].get<double>() <= 1e-14);
    }
  bool found = false;
  for (const auto& cr : r.criteria)
    if (cr.name.find("vanish") != std::string::npos) {
      found = true;
      CHECK(cr.pass);
    }
  CHECK(found);
}

TEST_CASE("equivalence: constant datum gives zero discrepancy", "[experiments]") {
  ExperimentConfig c = tiny("equivalence");
  c.datum.family = "zero";
  c.epsilons = {1.0, 0.0};
  const ExperimentReport r = run_equivalence_check(c);
  CHECK(r.all_pass());
  for (const auto& rec : r.records)
    if (rec["type"] == "equivalence") CHECK(rec["sup_pointwise"].get<double>() == 0.0);
}

TEST_CASE("selftest passes on the default configuration", "[experiments]") {
  const ExperimentReport r = run_lp_selftest(ExperimentConfig{});
  for (const auto& cr : r.criteria) {
    INFO(cr.name << " = " << cr.value);
    CHECK(cr.pass);
  }
  CHECK(r.criteria.size() >= 20);
}

TEST_CASE("simulate writes a readable trajectory", "[experiments]") {
  ExperimentConfig c = tiny("simulate");
  c.output_dir = scratch("sim");
  const ExperimentReport r = run_experiment(c);
  CHECK(r.all_pass());
  CHECK(std::filesystem::exists(c.output_dir / "trajectory" / "manifest.json"));
  bool diag = false;
  for (const auto& rec : r.records) diag = diag || rec["type"] == "uniqueness_diagnostic";
  CHECK(diag);
  std::filesystem::remove_all(c.output_dir);

  ExperimentConfig bad = tiny("simulate");
  bad.kind = "nope";
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);
}
