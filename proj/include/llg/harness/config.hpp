#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "llg/core/grid.hpp"
#include "llg/harness/datum.hpp"
#include "llg/lp/bump.hpp"

namespace llg::harness {

struct GridSpec {
  int dim = 3;
  int points = 32;
  double length = 2 * std::numbers::pi;

  Grid make() const { return Grid::cube(dim, points, length); }
};

struct Tolerances {
  double slope_low = 0.8;        // smooth-data rate fit
  double slope_high = 1.2;
  double t_linearity = 0.3;      // |e(T2)/e(T1) / (T2/T1) - 1|
  double rough_ratio = 4.0;      // e(eps_max) / e(eps_min) at least this
  double equivalence_sup = 1e-5; // sphere vs projected, finest dt
  double order_center = 4.0;
  double order_width = 0.5;
  double stability_constant = 10.0;  // truncation terms 1 and 3
  double term2_slope_width = 0.2;
};

/// One experiment. Field meanings follow the JSON schema in config/.
struct ExperimentConfig {
  std::string kind = "simulate";  // simulate | sweep | truncate | equivalence | selftest
  GridSpec grid;
  double a = 1.0;
  std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};  // descending
  double T = 0.5;
  double dt = 0.005;
  double delta = 0.05;
  /// sweep: extra horizons (<= T) for the linear-in-T check.
  std::vector<double> horizons;
  /// sweep: "smooth" asserts the rate, "rough" only monotone decrease.
  std::string regime = "smooth";
  /// equivalence: step refinement ladder.
  std::vector<double> dt_list{5e-3, 2.5e-3, 1.25e-3};
  /// truncate: low-pass levels; term-2 slope is checked at `rate_level`,
  /// which needs eps_max 4^K T below about one to be in the linear regime.
  std::vector<int> levels{1, 2, 3, 4};
  int rate_level = 4;
  /// simulate: "projected" or "sphere".
  std::string formulation = "projected";
  int sample_every = 1;
  DatumSpec datum;
  std::optional<lp::ShellRange> shell_range;
  std::filesystem::path output_dir = "llgsim-out";
  int jobs = 1;
  Tolerances tol;

  Grid make_grid() const { return grid.make(); }
  lp::ShellRange shells() const;
};

/// Parse and validate. Throws ConfigError with the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& c);
/// Invariants: epsilons sorted descending and non-negative, tolerances and
/// steps positive, known kind/regime/formulation.
void validate(const ExperimentConfig& c);

}  // namespace llg::harness
