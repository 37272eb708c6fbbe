#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <random>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/harness/datum.hpp"
#include "llg/lp/littlewood_paley.hpp"

using namespace llg;
using namespace llg::evolve;
using Catch::Approx;

namespace {

ComplexField datum(const Grid& g, double amplitude, int cutoff = 1000, const std::string& family = "smooth_bump/v1") {
  harness::DatumSpec d;
  d.family = family;
  d.amplitude = amplitude;
  d.cutoff = cutoff;
  return harness::make_datum(g, d);
}

SolveOptions opts(double T, double dt, int every = 1) {
  SolveOptions o;
  o.T = T;
  o.dt = dt;
  o.sample_every = every;
  o.track_norms = false;
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("llg-test-" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("linear propagator: identity, unitarity, exact symbol, semigroup", "[evolve][linear]") {
  const Grid g = Grid::cube(3, 16);
  const ComplexField u = dealias(datum(g, 1.0, 1000, "shell_random/v1"));
  CHECK(sup_norm(linear_propagate(u, 0.0, 0.3) - u) <= 1e-15);
  CHECK(l2_norm(linear_propagate(u, 0.77, 0.0)) == Approx(l2_norm(u)).epsilon(1e-12));

  const ComplexField mode = ComplexField::sample(g, [](double x, double y, double) { return std::exp(cplx(0, 2 * x - y)); });
  const ComplexField out = linear_propagate(mode, 1.0, 0.5);
  const double xi2 = 5.0;
  for (std::size_t i = 0; i < g.point_count(); i += 97)
    CHECK(std::abs(out[i]) == Approx(std::exp(-0.5 * xi2)).epsilon(1e-12));

  for (double eps : {0.0, 0.1, 1.0}) {
    const ComplexField a = linear_propagate(linear_propagate(u, 0.13, eps), 0.29, eps);
    CHECK(sup_norm(a - linear_propagate(u, 0.42, eps)) <= 1e-12 * sup_norm(u));
  }
  Propagator prop(g, LlgParams{1.0, 0.1});
  CHECK_THROWS_AS(prop.symbol(-0.1), DomainError);
  CHECK_NOTHROW(Propagator(g, LlgParams{1.0, 0.0}).symbol(-0.1));
}

TEST_CASE("integrating factor is exact without the nonlinearity", "[evolve][ifrk4]") {
  const Grid g = Grid::cube(3, 16);
  const ComplexField u = datum(g, 1.0);
  for (double eps : {0.0, 0.5}) {
    const LlgParams p{1.0, eps};
    const ComplexField stepped = step_dgl(u, 0.05, p, {NonlinearityMode::none});
    CHECK(sup_norm(stepped - linear_propagate(u, 0.05, p)) <= 1e-13);
  }
}

TEST_CASE("step size 0.01 is stable for every eps", "[evolve][ifrk4]") {
  const Grid g = Grid::cube(3, 32);
  const ComplexField u0 = datum(g, 0.05);
  for (double eps : {0.0, 1e-3, 1e-1, 1.0}) {
    const auto sol = solve(u0, LlgParams{1.0, eps}, opts(0.5, 0.01, 50));
    CHECK(l2_norm(sol.trajectory.snapshots.back()) <= 1.01 * l2_norm(u0));
  }
}

TEST_CASE("required step counts are uniform in eps", "[evolve][ifrk4]") {
  // Coarsest dt (by halving from 0.05) reaching a fixed accuracy; must agree within 2x.
  const Grid g = Grid::cube(3, 16);
  const ComplexField u0 = datum(g, 1.0);
  const double T = 0.2, target = 1e-8;
  std::vector<int> halvings;
  for (double eps : {0.0, 0.01, 0.1, 1.0}) {
    const LlgParams p{1.0, eps};
    const double fine = 0.05 / 64;
    const ComplexField ref =
        solve(u0, p, opts(T, fine, static_cast<int>(step_count(T, fine)))).trajectory.snapshots.back();
    int h = 0;
    for (; h < 6; ++h) {
      const double dt = 0.05 / (1 << h);
      const long steps = step_count(T, dt);
      if (sup_norm(solve(u0, p, opts(T, dt, static_cast<int>(steps))).trajectory.snapshots.back() - ref) <= target) break;
    }
    halvings.push_back(h);
  }
  const auto [lo, hi] = std::minmax_element(halvings.begin(), halvings.end());
  CHECK(*hi - *lo <= 1);
}

TEST_CASE("sphere step: fixed point, drift order, agreement with the projected step", "[evolve][sphere]") {
  const Grid g = Grid::cube(3, 16);
  sphere::SphereField q{sphere::constant_vector_field(g, {0, 0, 1})};
  CHECK(sphere::sup_distance(step_llg(q, 0.01, LlgParams{1.0, 0.5}).s, q.s) <= 1e-14);

  const ComplexField u = datum(g, 0.3);
  const sphere::SphereField s = sphere::inverse_stereographic(u);
  const LlgParams p{1.0, 0.1};
  std::vector<double> drift, gap;
  for (double dt : {0.004, 0.002, 0.001}) {
    double d = 0.0;
    const auto next = LlgIntegrator(p, dt).step(s, 0, &d);
    drift.push_back(d);
    gap.push_back(sup_norm(sphere::stereographic(next) - step_dgl(u, dt, p)));
  }
  for (std::size_t i = 0; i + 1 < drift.size(); ++i) {
    CHECK(std::log2(drift[i] / drift[i + 1]) >= 4.5);
    // Both paths dealias, but different products, so one step differs by
    // dt times a fixed spatial discrepancy.
    CHECK(gap[i] / gap[i + 1] == Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("solve: zero datum, smallness report, step validation", "[evolve][solve]") {
  const Grid g = Grid::cube(3, 16);
  const auto zero = solve(ComplexField(g), LlgParams{1.0, 0.1}, opts(0.1, 0.01));
  for (const auto& f : zero.trajectory.snapshots) CHECK(sup_norm(f) == 0.0);
  CHECK(zero.trajectory.size() == 11);
  CHECK_THROWS_AS(step_count(0.25, 0.02), ConfigError);
  CHECK(step_count(0.25, 0.0025) == 100);

  SolveOptions o = opts(0.1, 0.01);
  o.track_norms = true;
  o.smallness = 0.05;
  const auto sol = solve(datum(g, 0.02), LlgParams{1.0, 0.1}, o);
  CHECK(sol.report.small_data);
  CHECK(sol.report.smallness_kept);
  CHECK(sol.report.initial_critical_norm == Approx(0.02).epsilon(1e-12));
}

TEST_CASE("pure dissipation decreases the Dirichlet energy at every step", "[evolve][sphere]") {
  const Grid g = Grid::cube(3, 16);
  SolveOptions o = opts(0.2, 0.002);
  o.track_energy = true;
  const auto sol = solve(sphere::inverse_stereographic(datum(g, 0.5)), LlgParams{0.0, 1.0}, o);
  REQUIRE(sol.report.energies.size() == 101);
  for (std::size_t i = 1; i < sol.report.energies.size(); ++i)
    CHECK(sol.report.energies[i] <= sol.report.energies[i - 1] + 1e-9);
  CHECK(sol.report.energies.back() < sol.report.energies.front());
}

TEST_CASE("sphere constraint holds over T = 1 at eps = 0", "[evolve][sphere]") {
  const Grid g = Grid::cube(3, 16);
  const auto sol = solve(sphere::inverse_stereographic(datum(g, 0.05)), LlgParams{1.0, 0.0}, opts(1.0, 0.01, 100));
  for (const auto& s : sol.trajectory.snapshots) CHECK(s.unit_norm_defect() <= 1e-9);
  CHECK(sol.report.max_unit_drift <= 1e-9);
}

TEST_CASE("persistence of regularity uniformly in eps", "[evolve][solve]") {
  const Grid g = Grid::cube(3, 32);
  const ComplexField u0 = datum(g, 0.05);
  const lp::BesovParams high{3.5, 1};
  const double initial = lp::besov_norm(u0, high);
  for (double eps : {0.0, 0.01, 0.1, 1.0}) {
    const auto sol = solve(u0, LlgParams{1.0, eps}, opts(0.25, 0.005, 5));
    double sup = 0.0;
    for (const auto& f : sol.trajectory.snapshots) sup = std::max(sup, lp::besov_norm(f, high));
    CHECK(sup <= 10 * initial);
  }
}

TEST_CASE("Duhamel map: free evolution and fixed point", "[evolve][picard]") {
  const Grid g = Grid::cube(3, 16);
  const ComplexField u0 = datum(g, 0.5);
  const LlgParams p{1.0, 0.1};
  Trajectory zero;
  for (int i = 0; i <= 10; ++i) zero.push_back(0.01 * i, ComplexField(g));
  const Trajectory free = duhamel_map(zero, u0, p);
  for (std::size_t i = 0; i < free.size(); ++i)
    CHECK(sup_norm(free.snapshots[i] - linear_propagate(u0, free.times[i], p)) <= 1e-13);

  std::vector<double> residual;
  for (double dt : {0.02, 0.01}) {
    const Trajectory sol = solve(u0, p, opts(0.2, dt)).trajectory;
    const Trajectory phi = duhamel_map(sol, u0, p);
    double r = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i) r = std::max(r, l2_norm(phi.snapshots[i] - sol.snapshots[i]));
    residual.push_back(r);
  }
  CHECK(residual[1] <= 1e-6);
  CHECK(residual[0] / residual[1] >= 8.0);

  Trajectory three;
  for (int i = 0; i < 3; ++i) three.push_back(0.01 * i, ComplexField(g));
  CHECK_THROWS(duhamel_map(three, u0, p));
}

TEST_CASE("Picard iterates contract for small data", "[evolve][picard]") {
  const Grid g = Grid::cube(3, 16);
  const ComplexField u0 = datum(g, 0.02);
  for (double eps : {0.0, 1.0}) {
    const PicardState st = picard_iterate(u0, LlgParams{1.0, eps}, 0.2, 0.01, 5);
    REQUIRE(st.differences.size() == 5);
    for (double r : st.ratios()) CHECK(r <= 0.5);
  }
}

TEST_CASE("scaling: dilation, critical invariance, residual", "[evolve][scaling]") {
  const Grid g = Grid::cube(3, 32);
  const ComplexField u0 = datum(g, 0.05, 2);
  CHECK(sup_norm(dilate(u0, 1) - u0) == 0.0);
  CHECK_THROWS_AS(dilate(u0, 3), ConfigError);
  // The dilated field tiles lambda^n copies of the pattern; per-cell
  // normalization removes the lambda^{n/2} from the L2 mass.
  const double ratio = lp::critical_besov_norm(dilate(u0, 2)) / std::pow(2.0, 1.5) / lp::critical_besov_norm(u0);
  CHECK(std::abs(ratio - 1.0) <= 0.05);

  // Index dilation doubles every wavenumber, so the solution must stay below
  // N/4; on 32^3 the dealiased band reaches N/3 and the dilation aliases.
  const LlgParams p{1.0, 0.1};
  const Trajectory sol = solve(datum(Grid::cube(3, 64), 0.05, 2), p, opts(0.1, 0.0025)).trajectory;
  const Trajectory id = scaling_transform(sol, 1);
  CHECK(id.times == sol.times);
  const Trajectory scaled = scaling_transform(sol, 2);
  CHECK(scaled.times[4] == Approx(sol.times[4] / 4));
  // Both sides of the equation pick up lambda^2 = 4.
  const double r0 = discrete_residual(sol, p), r2 = discrete_residual(scaled, p);
  CHECK(r2 <= 10 * r0);
  CHECK(r2 / 4.0 == Approx(r0).epsilon(0.1));
}

TEST_CASE("trajectory directories round-trip", "[evolve][io]") {
  const Grid g = Grid::cube(3, 8);
  const LlgParams p{1.0, 0.05};
  SolveOptions o = opts(0.04, 0.01);
  o.datum = "smooth_bump/v1";
  const Trajectory t = solve(datum(g, 0.3), p, o).trajectory;
  const auto dir = scratch("traj");
  write_trajectory(dir, t);
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  const Trajectory back = read_trajectory(dir);
  CHECK(back.times == t.times);
  CHECK(back.meta.params.epsilon == 0.05);
  CHECK(back.meta.dt == 0.01);
  CHECK(back.meta.datum == "smooth_bump/v1");
  CHECK(back.meta.integrator == t.meta.integrator);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(sup_norm(back.snapshots[i] - t.snapshots[i]) == 0.0);

  const auto st = solve(sphere::inverse_stereographic(datum(g, 0.3), {1, 0, 0}), p, o).trajectory;
  const auto sdir = scratch("sphere");
  write_trajectory(sdir, st);
  const auto sback = read_sphere_trajectory(sdir);
  CHECK(sback.snapshots.back().base_point == st.snapshots.back().base_point);
  CHECK(sphere::sup_distance(sback.snapshots.back().s, st.snapshots.back().s) == 0.0);
  CHECK_THROWS(read_trajectory(sdir));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(sdir);
}
