#include <algorithm>
#include <cmath>
#include <random>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/dgl/dgl.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/harness/experiments.hpp"
#include "llg/lp/littlewood_paley.hpp"
#include "llg/simd/kernels.hpp"
#include "llg/spacetime/spacetime.hpp"
#include "llg/sphere/sphere_maps.hpp"

namespace llg::harness {
namespace {

ComplexField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  ComplexField f(g);
  for (auto& v : f.values()) v = {n(rng), n(rng)};
  return f;
}

double sup_diff(const ComplexField& a, const ComplexField& b) { return sup_norm(a - b); }

void lp_checks(ExperimentReport& rep, const Grid& g) {
  const auto range = lp::default_shell_range(g);
  const ComplexField f = random_field(g, 7);
  const SpectralField F = transform_forward(f);

  // Partition of unity on every nonzero wavevector.
  double pu = 0.0;
  const auto norms = g.xi_norm();
  for (std::size_t i = 1; i < g.point_count(); ++i) {
    double s = 0.0;
    for (int k = range.k_min; k <= range.k_max; ++k) s += lp::chi(k, norms[i]);
    pu = std::max(pu, std::abs(s - 1.0));
  }
  rep.check("lp: sum_k chi_k = 1 on nonzero wavevectors", pu <= 1e-12, pu);

  double support = 0.0;
  for (int k = range.k_min; k <= range.k_max; ++k)
    for (double r = 0.0; r < 4.0 * std::ldexp(1.0, k); r += 0.01 * std::ldexp(1.0, k))
      if (r < 0.625 * std::ldexp(1.0, k) || r > 1.6 * std::ldexp(1.0, k)) support = std::max(support, lp::chi(k, r));
  rep.check("lp: chi_k supported in [5/8, 8/5] 2^k", support == 0.0, support);

  const auto dec = lp::decompose(f, range);
  rep.check("lp: sum_k P_k f + mean reconstructs f", sup_diff(dec.reconstruct(), f) <= 1e-12,
            sup_diff(dec.reconstruct(), f));

  double cross = 0.0;
  for (int k = range.k_min; k <= range.k_max; ++k)
    for (int l = k + 2; l <= range.k_max; ++l) {
      const SpectralField a = transform_forward(dec.shells[k - range.k_min]);
      const SpectralField b = transform_forward(dec.shells[l - range.k_min]);
      cplx ip{};
      for (std::size_t i = 0; i < a.size(); ++i) ip += a[i] * std::conj(b[i]);
      cross = std::max(cross, std::abs(ip));
    }
  rep.check("lp: P_k f and P_l f orthogonal for |k - l| >= 2", cross <= 1e-9, cross);

  // s = 0, q = 2 Besov norm is comparable to L2 of the mean-free part: each
  // wavevector lies in at most two shells and sum chi_k^2 is in [1/2, 1].
  const double b = lp::besov_norm(F, {0.0, 2}, range);
  SpectralField F0 = F;
  F0[0] = 0.0;
  const double l2 = l2_norm(F0);
  rep.check("lp: B^0_{2,2} equivalent to L2 (ratio in [1/sqrt 2, 1])",
            b / l2 >= std::sqrt(0.5) - 1e-12 && b / l2 <= 1.0 + 1e-12, b / l2);

  const ComplexField h = random_field(g, 8);
  const auto crit = lp::critical_params(g);
  const double lhs = lp::besov_norm(f + h, crit), rhs = lp::besov_norm(f, crit) + lp::besov_norm(h, crit);
  rep.check("lp: triangle inequality for the critical norm", lhs <= rhs * (1 + 1e-12), lhs / rhs);
}

void sphere_checks(ExperimentReport& rep, const Grid& g) {
  DatumSpec d;
  d.amplitude = 0.3;
  const ComplexField u = make_datum(g, d);
  const sphere::SphereField s = sphere::inverse_stereographic(u);
  rep.check("sphere: inverse stereographic lands on S^2", s.unit_norm_defect() <= 1e-13, s.unit_norm_defect());
  const double rt = sup_diff(sphere::stereographic(s), u);
  rep.check("sphere: stereographic round trip", rt <= 1e-12, rt);

  const sphere::Vec3 q{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
  const sphere::SphereField sq = sphere::inverse_stereographic(u, q);
  const double rtq = sup_diff(sphere::stereographic(sq), u);
  rep.check("sphere: round trip with a rotated base point", rtq <= 1e-12, rtq);

  const LlgParams p{1.0, 0.5};
  const auto v = sphere::llg_rhs(s, p);
  const double tangency = sup_norm(sphere::dot(v, s.s));
  rep.check("sphere: llg_rhs is tangent to S^2", tangency <= 1e-12, tangency);

  // R (s x Ds) = (R s) x D(R s) for rotations R; the equivariance holds for
  // the discrete field too since the 2/3 truncation commutes with R.
  const sphere::Vec3 axis{0.0, 1.0, 0.0};
  const double angle = std::numbers::pi / 2;
  sphere::SphereField rs = s;
  rs.s = sphere::rotate(s.s, axis, angle);
  const double eq = sphere::sup_distance(sphere::llg_rhs(rs, p), sphere::rotate(v, axis, angle));
  rep.check("sphere: llg_rhs commutes with a pi/2 rotation", eq <= 1e-12, eq);
}

void dgl_checks(ExperimentReport& rep, const Grid& g) {
  // |u| <= 1/2: the Taylor tail is bounded by r^{2(K+1)} / (1 - r^2) times |conj u S|.
  DatumSpec d;
  d.amplitude = 0.5;
  ComplexField u = make_datum(g, d);
  u *= cplx(0.5 / sup_norm(u));
  const ComplexField exact = dgl::g_nonlinearity(u, false);
  const ComplexField prod = [&] {
    ComplexField s = dgl::gradient_square_sum(u);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= std::conj(u[i]);
    return s;
  }();
  const int K = 8;
  const double bound = std::pow(0.25, K + 1) / (1 - 0.25) * sup_norm(prod) * (1 + 1e-9);
  const double err = sup_diff(dgl::g_taylor(u, K, false), exact);
  rep.check("dgl: Taylor remainder within r^{2(K+1)}/(1-r^2) at K=8", err <= bound + 1e-15, err / bound);

  // G is cubic: G(t u) / t^3 -> conj u S as t -> 0.
  const double t = 1e-3;
  ComplexField tu = u;
  tu *= cplx(t);
  ComplexField scaled = dgl::g_nonlinearity(tu, false);
  scaled *= cplx(1.0 / (t * t * t));
  const double rel = sup_diff(scaled, prod) / sup_norm(prod);
  rep.check("dgl: G has cubic leading order conj(u) S", rel <= 1e-5, rel);
}

void evolve_checks(ExperimentReport& rep, const Grid& g) {
  const ComplexField f = dealias(random_field(g, 9));
  const LlgParams p{1.0, 0.3};
  const ComplexField two = evolve::linear_propagate(evolve::linear_propagate(f, 0.1, p), 0.2, p);
  const ComplexField one = evolve::linear_propagate(f, 0.3, p);
  rep.check("evolve: E(s) E(t) = E(s + t)", sup_diff(two, one) <= 1e-12 * sup_norm(f), sup_diff(two, one));

  const ComplexField w = evolve::linear_propagate(f, 0.7, LlgParams{1.0, 0.0});
  const double mass = std::abs(l2_norm(w) - l2_norm(f)) / l2_norm(f);
  rep.check("evolve: eps = 0 free flow conserves L2", mass <= 1e-13, mass);

  DatumSpec d;
  d.amplitude = 0.3;
  const sphere::SphereField s0 = sphere::inverse_stereographic(make_datum(g, d));
  evolve::SolveOptions o;
  o.T = 0.05;
  o.dt = 0.005;
  o.track_norms = false;
  const auto sol = evolve::solve(s0, LlgParams{1.0, 0.5}, o);
  rep.check("evolve: sphere path keeps |s| = 1 (drift per step)", sol.report.max_unit_drift <= 1e-6,
            sol.report.max_unit_drift);
}

void spacetime_checks(ExperimentReport& rep, const Grid& g) {
  const int M = 16;
  const double dt = 0.05;
  auto wave = [](double x0, double x1, double, double t) {
    return std::exp(cplx(0, x0 + 2 * x1 + 3 * t)) + 0.5 * std::exp(cplx(0, -x1 - 5 * t));
  };
  const auto F = spacetime::SpaceTimeField::sample(g, M, dt, wave);
  const auto range = spacetime::modulation_range(F);
  double total = 0.0;
  for (int j = range.k_min; j <= range.k_max; ++j) total += spacetime::modulation_mass_fraction(F, j);
  total += spacetime::modulation_mass_below(F, range.k_min - 1);
  // Squares of a partition of unity sum to at most 1; each coefficient sees at
  // most two shells, so the sum of masses stays in [1/2, 1].
  rep.check("spacetime: modulation masses sum to within [1/2, 1]", total >= 0.5 && total <= 1.0 + 1e-12, total);

  const auto x01 = spacetime::x01_norm(F);
  rep.check("spacetime: X^{0,1} spectral and physical routes agree", x01.relative_gap <= 1e-10, x01.relative_gap);

  auto other = [](double x0, double, double x2, double t) { return std::exp(cplx(0, -x0 + x2 + t)); };
  const auto G = spacetime::SpaceTimeField::sample(g, M, dt, other);
  const double nul = spacetime::null_identity_residual(F, G);
  rep.check("spacetime: null-form identity", nul <= 1e-10, nul);

  double worst = 0.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const Wavevector a{U(rng), U(rng), U(rng)}, b{U(rng), U(rng), U(rng)};
    double ab = 0.0, na = 0.0, nb = 0.0;
    for (int j = 0; j < 3; ++j) ab += a[j] * b[j], na += a[j] * a[j], nb += b[j] * b[j];
    worst = std::max(worst, std::abs(spacetime::resonance(a, b)) - 2 * std::sqrt(na * nb));
  }
  rep.check("spacetime: |resonance| <= 2 |xi1| |xi2|", worst <= 1e-12, worst);
}

void core_checks(ExperimentReport& rep, const Grid& g) {
  const ComplexField f = random_field(g, 11);
  const double gap = std::abs(l2_norm(transform_forward(f)) - l2_norm(f)) / l2_norm(f);
  rep.check("core: Parseval", gap <= 1e-13, gap);

  const auto& sc = simd::kernels(simd::Level::scalar);
  const auto& vec = simd::kernels(simd::best_supported_level());
  ComplexField a = f, b = f;
  const ComplexField m = random_field(g, 12);
  sc.mul_complex(a.data(), m.data(), a.size());
  vec.mul_complex(b.data(), m.data(), b.size());
  ComplexField oa(g), ob(g);
  sc.dgl_pointwise(f.data(), m.data(), oa.data(), f.size());
  vec.dgl_pointwise(f.data(), m.data(), ob.data(), f.size());
  const double s1 = sc.sum_abs2(f.data(), f.size()), s2 = vec.sum_abs2(f.data(), f.size());
  const bool same = sup_diff(a, b) == 0.0 && sup_diff(oa, ob) == 0.0 && std::abs(s1 - s2) <= 1e-12 * s1;
  rep.check(std::string("simd: scalar and ") + simd::level_name(simd::best_supported_level()) + " kernels agree",
            same, sup_diff(a, b) + sup_diff(oa, ob) + std::abs(s1 - s2) / s1);
}

}  // namespace

ExperimentReport run_lp_selftest(const ExperimentConfig& c) {
  ExperimentReport rep = empty_report("selftest");
  const Grid g = Grid::cube(c.grid.dim, std::min(c.grid.points, 16), c.grid.length);
  rep.metadata = {{"grid", g.describe()}, {"environment", environment_metadata()}, {"config", to_json(c)}};
  core_checks(rep, g);
  lp_checks(rep, g);
  sphere_checks(rep, g);
  dgl_checks(rep, g);
  evolve_checks(rep, g);
  spacetime_checks(rep, g);
  return rep;
}

}  // namespace llg::harness
