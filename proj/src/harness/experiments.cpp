#include "llg/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "llg/core/transform.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/harness/parallel.hpp"
#include "llg/lp/littlewood_paley.hpp"
#include "llg/spacetime/spacetime.hpp"

namespace llg::harness {
namespace {

using nlohmann::json;

/// Below this every difference is treated as exactly zero (zero datum).
constexpr double kNegligible = 1e-14;

json base_metadata(const ExperimentConfig& c) {
  const Grid g = c.make_grid();
  const auto r = c.shells();
  json m;
  m["grid"] = {{"dim", g.dim()}, {"points", c.grid.points}, {"length", c.grid.length}, {"describe", g.describe()}};
  m["dt"] = c.dt;
  m["T"] = c.T;
  m["a"] = c.a;
  m["epsilons"] = c.epsilons;
  m["delta"] = c.delta;
  m["shell_range"] = {r.k_min, r.k_max};
  m["datum"] = c.datum.tag();
  m["integrator"] = "ifrk4";
  m["dealias"] = "2/3 per axis";
  m["config"] = to_json(c);
  m["environment"] = environment_metadata();
  if (g.dim() < 3) m["dimension_warning"] = "theory assumes n >= 3; n < 3 runs are for cheap testing only";
  return m;
}

json run_record(const Trajectory& t) {
  return {{"type", "run"},
          {"trajectory_key", spacetime::trajectory_key(t)},
          {"epsilon", t.meta.params.epsilon},
          {"a", t.meta.params.a},
          {"dt", t.meta.dt},
          {"integrator", t.meta.integrator},
          {"datum", t.meta.datum},
          {"samples", t.size()},
          {"T", t.final_time()},
          {"grid", t.grid().describe()}};
}

evolve::SolveOptions options(const ExperimentConfig& c, double dt, const std::string& datum) {
  evolve::SolveOptions o;
  o.T = c.T;
  o.dt = dt;
  o.sample_every = c.sample_every;
  o.smallness = c.delta;
  o.track_norms = false;
  o.datum = datum;
  return o;
}

Trajectory solve_projected(const ComplexField& u0, double eps, const ExperimentConfig& c, const std::string& tag) {
  return evolve::solve(u0, LlgParams{c.a, eps}, options(c, c.dt, tag)).trajectory;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

json norm_record(const std::string& field_id, const std::string& name, const lp::ShellRange& r, double value) {
  return {{"type", "norm"},
          {"field_id", field_id},
          {"norm_name", name},
          {"params", {{"s", "n/2"}, {"q", 1}, {"p", 2}}},
          {"value", value},
          {"shell_range", {r.k_min, r.k_max}}};
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double sup_besov_difference(const Trajectory& a, const Trajectory& b, const lp::ShellRange& range, double t_max) {
  if (a.size() != b.size()) throw SizeMismatchError("trajectories have different sample counts");
  const auto params = lp::critical_params(a.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) throw SizeMismatchError("trajectory sample times differ");
    if (a.times[i] > t_max + 1e-12) break;
    worst = std::max(worst, lp::besov_norm(transform_forward(a.snapshots[i] - b.snapshots[i]), params, range));
  }
  return worst;
}

ExperimentReport empty_report(const std::string& kind) {
  ExperimentReport r;
  r.kind = kind;
  if (kind == "sweep") {
    r.curve("inviscid_error", "epsilon", "sup_t_besov_error");
  } else if (kind == "truncate") {
    r.curve("truncation_term1", "level", "term1");
    r.curve("truncation_term2", "epsilon", "term2");
    r.curve("truncation_term3", "level", "term3");
    r.curve("truncation_tail", "level", "besov_tail");
  } else if (kind == "simulate") {
    r.curve("critical_norm", "t", "besov_critical");
  }
  return r;
}

ExperimentReport run_inviscid_sweep(const ExperimentConfig& c) {
  ExperimentReport rep = empty_report("sweep");
  rep.metadata = base_metadata(c);
  rep.metadata["regime"] = c.regime;
  const Grid g = c.make_grid();
  const auto range = c.shells();
  const ComplexField u0 = make_datum(g, c.datum);
  const std::string tag = c.datum.tag();
  rep.records.push_back(norm_record("datum", "besov_critical", range,
                                    lp::besov_norm(transform_forward(u0), lp::critical_params(g), range)));

  // Index 0 is the eps = 0 reference, then the sweep in config order.
  std::vector<double> eps{0.0};
  eps.insert(eps.end(), c.epsilons.begin(), c.epsilons.end());
  const auto runs = parallel_map(c.jobs, eps.size(), [&](std::size_t i) { return solve_projected(u0, eps[i], c, tag); });
  for (const auto& t : runs) rep.records.push_back(run_record(t));

  std::vector<double> horizons = c.horizons;
  if (std::find(horizons.begin(), horizons.end(), c.T) == horizons.end()) horizons.push_back(c.T);
  std::sort(horizons.begin(), horizons.end());

  // errors[h][i] for horizon h and epsilon index i (sweep entries only).
  std::vector<std::vector<double>> errors(horizons.size());
  for (std::size_t h = 0; h < horizons.size(); ++h)
    for (std::size_t i = 1; i < eps.size(); ++i)
      errors[h].push_back(sup_besov_difference(runs[i], runs[0], range, horizons[h]));

  const std::vector<double>& e = errors.back();
  const std::vector<double>& sweep = c.epsilons;
  Curve& curve = rep.curve("inviscid_error", "epsilon", "sup_t_besov_error");
  curve.x = sweep;
  curve.y = e;
  for (std::size_t h = 0; h + 1 < horizons.size(); ++h) {
    Curve& ch = rep.curve("inviscid_error_T" + fmt(horizons[h]), "epsilon", "sup_t_besov_error");
    ch.x = sweep;
    ch.y = errors[h];
  }
  for (std::size_t i = 0; i < sweep.size(); ++i)
    rep.records.push_back({{"type", "inviscid_error"},
                           {"epsilon", sweep[i]},
                           {"T", c.T},
                           {"value", e[i]},
                           {"trajectory_key", spacetime::trajectory_key(runs[i + 1])},
                           {"reference_key", spacetime::trajectory_key(runs[0])}});

  const double emax = *std::max_element(e.begin(), e.end());
  if (emax <= kNegligible) {
    rep.check("zero datum gives e(eps) = 0", true, emax, "all errors vanish; rate fits skipped");
    return rep;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < e.size(); ++i) monotone = monotone && e[i] < e[i - 1];
  rep.check("e(eps) decreases monotonically along the sweep", monotone, e.back(), "eps sorted descending");

  if (c.regime == "smooth") {
    const double slope = loglog_slope(sweep, e);
    rep.check("log-log slope of e(eps) in [" + fmt(c.tol.slope_low) + ", " + fmt(c.tol.slope_high) + "]",
              slope >= c.tol.slope_low && slope <= c.tol.slope_high, slope);
    for (std::size_t h = 0; h + 1 < horizons.size(); ++h) {
      const double expected = c.T / horizons[h];
      double worst = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i)
        worst = std::max(worst, std::abs(e[i] / errors[h][i] / expected - 1.0));
      rep.check("e linear in T between T=" + fmt(horizons[h]) + " and T=" + fmt(c.T) + " within " +
                    fmt(100 * c.tol.t_linearity) + "%",
                worst <= c.tol.t_linearity, worst, "max relative deviation of e(T2)/e(T1) from T2/T1");
    }
  } else {
    const double ratio = e.front() / e.back();
    rep.check("e(eps_min) <= e(eps_max) / " + fmt(c.tol.rough_ratio), ratio >= c.tol.rough_ratio, ratio,
              "rough data: no rate asserted");
  }
  return rep;
}

ExperimentReport run_truncation_study(const ExperimentConfig& c) { return run_truncation_study(c, c.levels); }

ExperimentReport run_truncation_study(const ExperimentConfig& c, const std::vector<int>& levels) {
  ExperimentReport rep = empty_report("truncate");
  rep.metadata = base_metadata(c);
  rep.metadata["levels"] = levels;
  rep.metadata["rate_level"] = c.rate_level;
  rep.metadata["warnings"] = nlohmann::json::array();
  const Grid g = c.make_grid();
  const auto range = c.shells();
  const auto crit = lp::critical_params(g);
  const SpectralField Phi = transform_forward(make_datum(g, c.datum));
  const std::string tag = c.datum.tag();

  std::vector<double> eps{0.0};
  eps.insert(eps.end(), c.epsilons.begin(), c.epsilons.end());

  // Data: phi, then phi_K per level.
  std::vector<ComplexField> data{transform_inverse(Phi)};
  std::vector<double> tails;
  for (int K : levels) {
    const SpectralField low = K >= range.k_max ? Phi : lp::project_below(Phi, std::max(K, range.k_min - 1), range);
    data.push_back(transform_inverse(low));
    tails.push_back(lp::besov_norm(Phi - low, crit, range));
  }
  const std::size_t ne = eps.size();
  const auto runs = parallel_map(c.jobs, data.size() * ne, [&](std::size_t i) {
    return solve_projected(data[i / ne], eps[i % ne], c, tag + (i / ne ? "|P<=" + std::to_string(levels[i / ne - 1]) : ""));
  });
  for (const auto& t : runs) rep.records.push_back(run_record(t));
  auto run = [&](std::size_t datum, std::size_t e) -> const Trajectory& { return runs[datum * ne + e]; };

  double worst_ratio = 0.0;
  bool vanish_ok = true;
  std::vector<double> term2_at_rate;
  bool have_rate_level = false;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::size_t d = l + 1;
    const double term3 = sup_besov_difference(run(d, 0), run(0, 0), range, c.T);
    double term1_max = 0.0;
    std::vector<double> term2;
    for (std::size_t e = 1; e < ne; ++e) {
      const double term1 = sup_besov_difference(run(0, e), run(d, e), range, c.T);
      term2.push_back(sup_besov_difference(run(d, e), run(d, 0), range, c.T));
      term1_max = std::max(term1_max, term1);
      rep.records.push_back({{"type", "truncation_terms"},
                             {"level", levels[l]},
                             {"epsilon", eps[e]},
                             {"term1", term1},
                             {"term2", term2.back()},
                             {"term3", term3},
                             {"tail", tails[l]}});
    }
    rep.curve("truncation_term1", "level", "term1").x.push_back(levels[l]);
    rep.curve("truncation_term1", "level", "term1").y.push_back(term1_max);
    rep.curve("truncation_term3", "level", "term3").x.push_back(levels[l]);
    rep.curve("truncation_term3", "level", "term3").y.push_back(term3);
    rep.curve("truncation_tail", "level", "besov_tail").x.push_back(levels[l]);
    rep.curve("truncation_tail", "level", "besov_tail").y.push_back(tails[l]);
    if (tails[l] <= kNegligible) {
      vanish_ok = vanish_ok && term1_max <= kNegligible && term3 <= kNegligible;
    } else {
      worst_ratio = std::max({worst_ratio, term1_max / tails[l], term3 / tails[l]});
    }
    if (tails[l] <= kNegligible)
      rep.metadata["warnings"].push_back("level " + std::to_string(levels[l]) +
                                         ": phi_K = phi on this grid, terms 1 and 3 vanish identically");
    const double t2max = *std::max_element(term2.begin(), term2.end());
    if (t2max > kNegligible)
      rep.records.push_back({{"type", "term2_slope"}, {"level", levels[l]}, {"slope", loglog_slope(c.epsilons, term2)},
                             {"eps_4K_T", c.epsilons.front() * std::ldexp(1.0, 2 * levels[l]) * c.T}});
    if (levels[l] == c.rate_level) {
      term2_at_rate = term2;
      have_rate_level = true;
    }
  }
  rep.metadata["stability_constant"] = worst_ratio;
  rep.check("terms 1 and 3 <= " + fmt(c.tol.stability_constant) + " * ||phi - phi_K||",
            worst_ratio <= c.tol.stability_constant, worst_ratio, "measured stability constant");
  rep.check("terms 1 and 3 vanish when phi is band-limited below K", vanish_ok, vanish_ok ? 0.0 : 1.0);
  if (have_rate_level) {
    Curve& c2 = rep.curve("truncation_term2", "epsilon", "term2");
    c2.x = c.epsilons;
    c2.y = term2_at_rate;
    const double tmax = *std::max_element(term2_at_rate.begin(), term2_at_rate.end());
    if (tmax <= kNegligible) {
      rep.check("term 2 vanishes (zero datum)", true, tmax);
    } else {
      const double slope = loglog_slope(c.epsilons, term2_at_rate);
      rep.check("term 2 slope in eps at K=" + std::to_string(c.rate_level) + " within 1 +- " +
                    fmt(c.tol.term2_slope_width),
                std::abs(slope - 1.0) <= c.tol.term2_slope_width, slope);
    }
  }
  return rep;
}

ExperimentReport run_equivalence_check(const ExperimentConfig& c) {
  ExperimentReport rep = empty_report("equivalence");
  rep.metadata = base_metadata(c);
  rep.metadata["dt_list"] = c.dt_list;
  rep.metadata["integrators"] = {{"sphere", "rk4-renormalized"}, {"projected", "ifrk4"}};
  const Grid g = c.make_grid();
  const auto range = c.shells();
  const ComplexField u0 = make_datum(g, c.datum);
  const sphere::SphereField s0 = sphere::inverse_stereographic(u0);
  const std::string tag = c.datum.tag();

  std::vector<double> dts = c.dt_list;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  const std::size_t nd = dts.size();

  struct Cell {
    double sup = 0.0;
    double besov = 0.0;
  };
  const auto cells = parallel_map(c.jobs, c.epsilons.size() * nd, [&](std::size_t i) {
    const double eps = c.epsilons[i / nd];
    const double dt = dts[i % nd];
    evolve::SolveOptions o = options(c, dt, tag);
    const long steps = evolve::step_count(c.T, dt);
    o.sample_every = static_cast<int>(steps / std::gcd(steps, 10L));
    const LlgParams p{c.a, eps};
    const auto proj = evolve::solve(u0, p, o).trajectory;
    const auto sph = evolve::solve(s0, p, o).trajectory;
    Cell cell;
    for (std::size_t k = 0; k < proj.size(); ++k) {
      const sphere::SphereField back = sphere::inverse_stereographic(proj.snapshots[k]);
      cell.sup = std::max(cell.sup, sphere::sup_distance(back.s, sph.snapshots[k].s));
      const ComplexField diff = sphere::stereographic(sph.snapshots[k]) - proj.snapshots[k];
      cell.besov = std::max(cell.besov, lp::besov_norm(transform_forward(diff), lp::critical_params(g), range));
    }
    return cell;
  });

  for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
    const double eps = c.epsilons[ei];
    Curve& curve = rep.curve("equivalence_discrepancy_eps" + fmt(eps), "dt", "sup_discrepancy");
    std::vector<double> d;
    for (std::size_t k = 0; k < nd; ++k) {
      const Cell& cell = cells[ei * nd + k];
      curve.x.push_back(dts[k]);
      curve.y.push_back(cell.sup);
      d.push_back(cell.sup);
      rep.records.push_back({{"type", "equivalence"},
                             {"epsilon", eps},
                             {"dt", dts[k]},
                             {"sup_pointwise", cell.sup},
                             {"sup_besov", cell.besov}});
    }
    const double finest = d.back();
    if (*std::max_element(d.begin(), d.end()) <= kNegligible) {
      rep.check("eps=" + fmt(eps) + ": both paths agree exactly (constant datum)", true, finest);
      continue;
    }
    rep.check("eps=" + fmt(eps) + ": sup discrepancy at dt=" + fmt(dts.back()) + " <= " + fmt(c.tol.equivalence_sup),
              finest <= c.tol.equivalence_sup, finest);
    for (std::size_t k = 0; k + 1 < nd; ++k) {
      const double order = std::log(d[k] / d[k + 1]) / std::log(dts[k] / dts[k + 1]);
      rep.check("eps=" + fmt(eps) + ": discrepancy order " + fmt(dts[k]) + " -> " + fmt(dts[k + 1]) + " within " +
                    fmt(c.tol.order_center) + " +- " + fmt(c.tol.order_width),
                std::abs(order - c.tol.order_center) <= c.tol.order_width, order);
    }
  }
  return rep;
}

ExperimentReport run_simulate(const ExperimentConfig& c) {
  ExperimentReport rep = empty_report("simulate");
  rep.metadata = base_metadata(c);
  rep.metadata["formulation"] = c.formulation;
  const Grid g = c.make_grid();
  const auto range = c.shells();
  const ComplexField u0 = make_datum(g, c.datum);
  const double eps = c.epsilons.front();
  const LlgParams p{c.a, eps};
  evolve::SolveOptions o = options(c, c.dt, c.datum.tag());
  o.track_norms = true;

  Trajectory projected;
  evolve::SolveReport sr;
  if (c.formulation == "sphere") {
    o.track_energy = true;
    auto sol = evolve::solve(sphere::inverse_stereographic(u0), p, o);
    sr = sol.report;
    evolve::write_trajectory(c.output_dir / "trajectory", sol.trajectory);
    projected.meta = sol.trajectory.meta;
    for (std::size_t i = 0; i < sol.trajectory.size(); ++i)
      projected.push_back(sol.trajectory.times[i], sphere::stereographic(sol.trajectory.snapshots[i]));
    Curve& ce = rep.curve("dirichlet_energy", "step", "energy");
    for (std::size_t i = 0; i < sr.energies.size(); ++i) {
      ce.x.push_back(static_cast<double>(i));
      ce.y.push_back(sr.energies[i]);
    }
  } else {
    auto sol = evolve::solve(u0, p, o);
    sr = sol.report;
    projected = sol.trajectory;
    evolve::write_trajectory(c.output_dir / "trajectory", projected);
  }
  rep.records.push_back(run_record(projected));

  Curve& cn = rep.curve("critical_norm", "t", "besov_critical");
  for (std::size_t i = 0; i < projected.size(); ++i) {
    cn.x.push_back(projected.times[i]);
    cn.y.push_back(lp::besov_norm(transform_forward(projected.snapshots[i]), lp::critical_params(g), range));
  }
  rep.metadata["solve"] = {{"initial_critical_norm", sr.initial_critical_norm},
                           {"sup_critical_norm", sr.sup_critical_norm},
                           {"smallness_delta", sr.smallness},
                           {"small_data", sr.small_data},
                           {"steps", sr.steps},
                           {"max_unit_drift", sr.max_unit_drift},
                           {"warnings", sr.warnings}};
  rep.check("sup_t critical norm <= 5 delta", sr.smallness_kept, sr.sup_critical_norm,
            sr.small_data ? "small datum" : "datum above delta: smallness not expected");

  // Uniqueness diagnostic only: sensitivity to halving the step.
  if (c.formulation == "projected") {
    evolve::SolveOptions half = o;
    half.dt = c.dt / 2;
    half.sample_every = 2 * c.sample_every;
    half.track_norms = false;
    const auto fine = evolve::solve(u0, p, half).trajectory;
    double gap = 0.0;
    for (std::size_t i = 0; i < projected.size(); ++i)
      gap = std::max(gap, l2_norm(fine.snapshots[i] - projected.snapshots[i]));
    rep.records.push_back({{"type", "uniqueness_diagnostic"},
                           {"sup_t_l2_gap_dt_vs_dt_half", gap},
                           {"note", "insensitivity to the step size; diagnostic only"}});
  }
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
  if (c.kind == "simulate") return run_simulate(c);
  if (c.kind == "sweep") return run_inviscid_sweep(c);
  if (c.kind == "truncate") return run_truncation_study(c);
  if (c.kind == "equivalence") return run_equivalence_check(c);
  if (c.kind == "selftest") return run_lp_selftest(c);
  throw ConfigError("unknown kind '" + c.kind + "'");
}

}  // namespace llg::harness
