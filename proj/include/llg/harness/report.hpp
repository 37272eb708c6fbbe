#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace llg::harness {

struct Criterion {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

/// Named (x, y) series, emitted as a two-column plot-data file.
struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ExperimentReport {
  std::string kind;
  /// Grid, steps, window, shell range, datum, parameters and environment.
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<Criterion> criteria;
  std::vector<Curve> curves;
  /// Extra NDJSON records (norm evaluations, diagnostics).
  std::vector<nlohmann::json> records;

  bool all_pass() const;
  Criterion& check(std::string name, bool pass, double value, std::string detail = {});
  Curve& curve(const std::string& name, std::string x_label, std::string y_label);
};

/// Build, compiler, SIMD level, FFT library and thread count.
nlohmann::json environment_metadata();

/// One JSON object per line: metadata, criteria, curves, records.
void write_ndjson(const ExperimentReport& report, std::ostream& os);
void write_ndjson(const ExperimentReport& report, const std::filesystem::path& path);

/// One "<curve>.dat" file per curve: '#' header lines, then "x y" rows in
/// %.17g, so a read-back reproduces every value bit for bit. Returns the
/// written paths.
std::vector<std::filesystem::path> emit_plotdata(const ExperimentReport& report, const std::filesystem::path& dir);
Curve read_plotdata(const std::filesystem::path& path);

}  // namespace llg::harness
