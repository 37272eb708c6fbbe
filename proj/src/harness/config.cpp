#include "llg/harness/config.hpp"

#include <algorithm>
#include <fstream>

#include "llg/core/error.hpp"

namespace llg::harness {
namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void check_keys(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw ConfigError("unknown config key '" + where + key + "'");
}

}  // namespace

lp::ShellRange ExperimentConfig::shells() const {
  return shell_range ? *shell_range : lp::default_shell_range(make_grid());
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j,
             {"$schema", "kind", "grid", "a", "epsilons", "T", "dt", "delta", "horizons", "regime", "dt_list",
              "levels", "rate_level", "formulation", "sample_every", "datum", "shell_range", "output_dir",
              "jobs", "tolerances"},
             "");
  ExperimentConfig c;
  read(j, "kind", c.kind);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"dim", "points", "length"}, "grid.");
    read(g, "dim", c.grid.dim);
    read(g, "points", c.grid.points);
    read(g, "length", c.grid.length);
  }
  read(j, "a", c.a);
  read(j, "epsilons", c.epsilons);
  read(j, "T", c.T);
  read(j, "dt", c.dt);
  read(j, "delta", c.delta);
  read(j, "horizons", c.horizons);
  read(j, "regime", c.regime);
  read(j, "dt_list", c.dt_list);
  read(j, "levels", c.levels);
  read(j, "rate_level", c.rate_level);
  read(j, "formulation", c.formulation);
  read(j, "sample_every", c.sample_every);
  if (j.contains("datum")) {
    const json& d = j.at("datum");
    check_keys(d, {"family", "amplitude", "seed", "kappa", "cutoff"}, "datum.");
    read(d, "family", c.datum.family);
    read(d, "amplitude", c.datum.amplitude);
    read(d, "seed", c.datum.seed);
    read(d, "kappa", c.datum.kappa);
    read(d, "cutoff", c.datum.cutoff);
  }
  if (j.contains("shell_range")) {
    std::vector<int> r;
    read(j, "shell_range", r);
    if (r.size() != 2 || r[0] > r[1]) throw ConfigError("shell_range must be [k_min, k_max] with k_min <= k_max");
    c.shell_range = lp::ShellRange{r[0], r[1]};
  }
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  read(j, "jobs", c.jobs);
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_keys(t,
               {"slope_low", "slope_high", "t_linearity", "rough_ratio", "equivalence_sup", "order_center",
                "order_width", "stability_constant", "term2_slope_width"},
               "tolerances.");
    read(t, "slope_low", c.tol.slope_low);
    read(t, "slope_high", c.tol.slope_high);
    read(t, "t_linearity", c.tol.t_linearity);
    read(t, "rough_ratio", c.tol.rough_ratio);
    read(t, "equivalence_sup", c.tol.equivalence_sup);
    read(t, "order_center", c.tol.order_center);
    read(t, "order_width", c.tol.order_width);
    read(t, "stability_constant", c.tol.stability_constant);
    read(t, "term2_slope_width", c.tol.term2_slope_width);
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  try {
    return parse_config(json::parse(is));
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["grid"] = {{"dim", c.grid.dim}, {"points", c.grid.points}, {"length", c.grid.length}};
  j["a"] = c.a;
  j["epsilons"] = c.epsilons;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["delta"] = c.delta;
  j["horizons"] = c.horizons;
  j["regime"] = c.regime;
  j["dt_list"] = c.dt_list;
  j["levels"] = c.levels;
  j["rate_level"] = c.rate_level;
  j["formulation"] = c.formulation;
  j["sample_every"] = c.sample_every;
  j["datum"] = {{"family", c.datum.family},
                {"amplitude", c.datum.amplitude},
                {"seed", c.datum.seed},
                {"kappa", c.datum.kappa},
                {"cutoff", c.datum.cutoff}};
  if (c.shell_range) j["shell_range"] = {c.shell_range->k_min, c.shell_range->k_max};
  j["output_dir"] = c.output_dir.string();
  j["jobs"] = c.jobs;
  j["tolerances"] = {{"slope_low", c.tol.slope_low},
                     {"slope_high", c.tol.slope_high},
                     {"t_linearity", c.tol.t_linearity},
                     {"rough_ratio", c.tol.rough_ratio},
                     {"equivalence_sup", c.tol.equivalence_sup},
                     {"order_center", c.tol.order_center},
                     {"order_width", c.tol.order_width},
                     {"stability_constant", c.tol.stability_constant},
                     {"term2_slope_width", c.tol.term2_slope_width}};
  return j;
}

void validate(const ExperimentConfig& c) {
  static const std::vector<std::string> kinds{"simulate", "sweep", "truncate", "equivalence", "selftest"};
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) throw ConfigError("unknown kind '" + c.kind + "'");
  if (c.regime != "smooth" && c.regime != "rough") throw ConfigError("regime must be 'smooth' or 'rough'");
  if (c.formulation != "projected" && c.formulation != "sphere")
    throw ConfigError("formulation must be 'projected' or 'sphere'");
  if (c.grid.dim < 1 || c.grid.dim > 3) throw ConfigError("grid.dim must be 1, 2 or 3");
  (void)c.make_grid();  // size rules
  if (c.epsilons.empty()) throw ConfigError("epsilons must not be empty");
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    if (!(c.epsilons[i] >= 0.0 && c.epsilons[i] <= 1.0)) throw ConfigError("epsilons must lie in [0, 1]");
    if (i > 0 && !(c.epsilons[i] < c.epsilons[i - 1])) throw ConfigError("epsilons must be sorted descending");
  }
  if (!(c.T > 0.0) || !(c.dt > 0.0)) throw ConfigError("T and dt must be positive");
  if (!(c.delta > 0.0)) throw ConfigError("delta must be positive");
  for (double h : c.horizons)
    if (!(h > 0.0) || h > c.T) throw ConfigError("horizons must lie in (0, T]");
  for (double h : c.dt_list)
    if (!(h > 0.0)) throw ConfigError("dt_list entries must be positive");
  if (c.sample_every < 1) throw ConfigError("sample_every must be at least 1");
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  const Tolerances& t = c.tol;
  for (double v : {t.slope_low, t.slope_high, t.t_linearity, t.rough_ratio, t.equivalence_sup, t.order_center,
                   t.order_width, t.stability_constant, t.term2_slope_width})
    if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
  if (t.slope_low > t.slope_high) throw ConfigError("slope_low must not exceed slope_high");
}

}  // namespace llg::harness
