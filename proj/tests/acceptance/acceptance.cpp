// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/harness/datum.hpp"
#include "llg/harness/experiments.hpp"
#include "llg/lp/littlewood_paley.hpp"
#include "llg/spacetime/spacetime.hpp"
#include "llg/sphere/sphere_maps.hpp"

using namespace llg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexField smooth(const Grid& g, double amplitude, int cutoff = 1000) {
  harness::DatumSpec d;
  d.amplitude = amplitude;
  d.cutoff = cutoff;
  return harness::make_datum(g, d);
}

evolve::SolveOptions options(double T, double dt, int every = 1) {
  evolve::SolveOptions o;
  o.T = T;
  o.dt = dt;
  o.sample_every = every;
  o.track_norms = false;
  return o;
}

/// All criteria of a harness report, summarized.
Outcome from_report(const harness::ExperimentReport& r) {
  Outcome o{r.all_pass(), ""};
  for (const auto& c : r.criteria) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += c.name + (c.pass ? " ok" : " FAILED") + fmt(" (%.4g)", c.value);
  }
  return o;
}

Outcome ac1_partition() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = Grid::cube(3, 64);
  const auto range = lp::default_shell_range(g);
  const auto norms = g.xi_norm();
  double worst = 0.0;
  for (std::size_t i = 1; i < g.point_count(); ++i) {
    double s = 0.0;
    for (int k = range.k_min; k <= range.k_max; ++k) s += lp::chi(k, norms[i]);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 1.0, fmt("max |sum chi_k - 1| = %.3g on 64^3, %.3f s", worst, secs)};
}

Outcome ac2_round_trips() {
  const Grid g = Grid::cube(3, 8);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double forward = 0.0, backward = 0.0, norm = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double scale = 0.5 * (trial % 10 + 1) / 10.0;
    ComplexField u(g);
    for (auto& v : u.values()) v = scale * cplx(unit(rng), unit(rng));
    const sphere::SphereField s = sphere::inverse_stereographic(u);
    norm = std::max(norm, s.unit_norm_defect());
    forward = std::max(forward, sup_norm(sphere::stereographic(s) - u));
    ComplexField w(g);
    for (auto& v : w.values()) v = scale * cplx(unit(rng), unit(rng));
    const sphere::SphereField q = sphere::inverse_stereographic(w);
    backward = std::max(backward, sphere::sup_distance(sphere::inverse_stereographic(sphere::stereographic(q)).s, q.s));
  }
  return {forward <= 1e-12 && backward <= 1e-12 && norm <= 1e-14,
          fmt("p o p^-1: %.3g, p^-1 o p: %.3g, | |s| - 1 |: %.3g over 1000 fields", forward, backward, norm)};
}

Outcome ac3_identities() {
  const Grid g = Grid::cube(3, 32);
  const auto sol = evolve::solve(smooth(g, 0.05), LlgParams{1.0, 0.1}, options(0.25, 0.005));
  const auto F = spacetime::SpaceTimeField::from_trajectory(sol.trajectory);
  const double null_res = spacetime::null_identity_residual(F, F);
  const auto x = spacetime::x01_norm(F);
  return {null_res <= 1e-8 && x.relative_gap <= 1e-10,
          fmt("null identity residual %.3g, x01 dual-route gap %.3g (32^3, T = 0.25)", null_res, x.relative_gap)};
}

Outcome ac4_order() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = Grid::cube(3, 32);
  const ComplexField u0 = smooth(g, 1.0);
  const double T = 0.5;
  bool ok = true;
  std::string detail;
  for (double eps : {0.0, 0.1, 1.0}) {
    std::vector<ComplexField> finals;
    for (int h = 0; h <= 3; ++h) {
      const double dt = 0.05 / (1 << h);
      const int steps = static_cast<int>(evolve::step_count(T, dt));
      finals.push_back(evolve::solve(u0, LlgParams{1.0, eps}, options(T, dt, steps)).trajectory.snapshots.back());
    }
    std::vector<double> diff;
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) diff.push_back(sup_norm(finals[i] - finals[i + 1]));
    detail += fmt("eps %g orders", eps);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
      const double order = std::log2(diff[i] / diff[i + 1]);
      ok = ok && std::abs(order - 4.0) <= 0.3;
      detail += fmt(" %.3f", order);
    }
    detail += "; ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 300.0;
  return {ok, detail + fmt("%.1f s", secs)};
}

Outcome ac5_equivalence() {
  harness::ExperimentConfig c;
  c.kind = "equivalence";
  c.epsilons = {0.1, 0.0};
  c.T = 0.25;
  c.dt_list = {0.01, 0.005, 0.0025};
  c.datum.amplitude = 0.05;
  return from_report(harness::run_equivalence_check(c));
}

Outcome ac6_uniform() {
  const Grid g = Grid::cube(3, 32);
  const double delta = 0.02;
  const ComplexField u0 = smooth(g, delta);
  bool ok = true;
  std::string detail = "sup_t norm / delta:";
  for (double eps : {0.0, 1e-3, 1e-2, 1e-1, 1.0}) {
    evolve::SolveOptions o = options(0.5, 0.005, 10);
    o.track_norms = true;
    o.smallness = delta;
    const auto sol = evolve::solve(u0, LlgParams{1.0, eps}, o);
    ok = ok && sol.report.sup_critical_norm <= 5 * delta;
    detail += fmt(" %.3f", sol.report.sup_critical_norm / delta);
  }
  detail += "; Picard ratios:";
  for (double eps : {0.0, 1.0}) {
    const auto st = evolve::picard_iterate(u0, LlgParams{1.0, eps}, 0.5, 0.005, 5);
    for (double r : st.ratios()) {
      ok = ok && r <= 0.5;
      detail += fmt(" %.2g", r);
    }
  }
  return {ok, detail};
}

Outcome ac7_rough() {
  harness::ExperimentConfig c;
  c.kind = "sweep";
  c.regime = "rough";
  c.T = 0.1;
  c.dt = 0.0025;
  c.datum.family = "shell_random/v1";
  c.datum.seed = 1;
  return from_report(harness::run_inviscid_sweep(c));
}

Outcome ac8_smooth() {
  const auto t0 = std::chrono::steady_clock::now();
  harness::ExperimentConfig c;
  c.kind = "sweep";
  c.regime = "smooth";
  c.T = 0.5;
  c.dt = 0.005;
  c.horizons = {0.25};
  Outcome o = from_report(harness::run_inviscid_sweep(c));
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 1800.0;
  o.detail += fmt("; %.1f s", secs);
  return o;
}

Outcome ac9_dissipation() {
  const Grid g = Grid::cube(3, 32);
  evolve::SolveOptions o = options(0.2, 0.002);
  o.track_energy = true;
  const auto sol = evolve::solve(sphere::inverse_stereographic(smooth(g, 0.5)), LlgParams{0.0, 1.0}, o);
  const auto& e = sol.report.energies;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < e.size(); ++i) worst = std::max(worst, e[i] - e[i - 1]);
  return {e.size() > 1 && worst <= 1e-9,
          fmt("max step increase %.3g over %zu steps, E %.6g -> %.6g", worst, e.size() - 1, e.front(), e.back())};
}

Outcome ac10_scaling() {
  const Grid g = Grid::cube(3, 32);
  const ComplexField u0 = smooth(g, 0.05, 2);
  // Dilation tiles lambda^n copies; per-cell normalization divides by lambda^{n/2}.
  const double ratio = lp::critical_besov_norm(evolve::dilate(u0, 2)) / std::pow(2.0, 1.5) / lp::critical_besov_norm(u0);
  return {std::abs(ratio - 1.0) <= 0.05, fmt("normalized ratio %.5f", ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 partition of unity", ac1_partition},
      {"AC2 projection round trips", ac2_round_trips},
      {"AC3 exact-identity residuals", ac3_identities},
      {"AC4 integrator order", ac4_order},
      {"AC5 formulation equivalence", ac5_equivalence},
      {"AC6 uniform well-posedness proxy", ac6_uniform},
      {"AC7 inviscid limit, rough data", ac7_rough},
      {"AC8 inviscid rate, smooth data", ac8_smooth},
      {"AC9 dissipative monotonicity", ac9_dissipation},
      {"AC10 critical-norm scaling", ac10_scaling},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
