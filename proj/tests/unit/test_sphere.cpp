#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/harness/datum.hpp"
#include "llg/sphere/sphere_maps.hpp"

using namespace llg;
using namespace llg::sphere;
using Catch::Approx;

namespace {

VectorField3 random_vectors(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  VectorField3 v = make_vector_field(g);
  for (auto& c : v)
    for (auto& x : c.values()) x = n(rng);
  return v;
}

ComplexField random_small(const Grid& g, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexField f(g);
  for (auto& v : f.values()) v = scale * cplx(u(rng), u(rng));
  return f;
}

SphereField smooth_unit_field(const Grid& g, double amplitude) {
  harness::DatumSpec d;
  d.amplitude = amplitude;
  return inverse_stereographic(harness::make_datum(g, d));
}

}  // namespace

TEST_CASE("cross product identities", "[sphere]") {
  const Grid g = Grid::cube(3, 8);
  const auto e1 = constant_vector_field(g, {1, 0, 0}), e2 = constant_vector_field(g, {0, 1, 0});
  CHECK(sup_distance(cross(e1, e2), constant_vector_field(g, {0, 0, 1})) == 0.0);
  const auto u = random_vectors(g, 1), v = random_vectors(g, 2);
  CHECK(sup_distance(cross(u, u), constant_vector_field(g, {0, 0, 0})) == 0.0);
  CHECK(sup_norm(dot(cross(u, v), u)) <= 1e-14 * 10);
  CHECK_THROWS_AS(cross(u, make_vector_field(Grid::cube(3, 16))), SizeMismatchError);
}

TEST_CASE("stereographic projection at base and equator points", "[sphere]") {
  const Grid g = Grid::cube(3, 8);
  SphereField s{constant_vector_field(g, {0, 0, 1})};
  CHECK(sup_norm(stereographic(s)) == 0.0);
  s.s = constant_vector_field(g, {1, 0, 0});
  ComplexField one(g);
  for (auto& v : one.values()) v = 1.0;
  CHECK(sup_norm(stereographic(s) - one) <= 1e-15);
  s.s = constant_vector_field(g, {0, 1, 0});
  ComplexField i(g);
  for (auto& v : i.values()) v = cplx(0, 1);
  CHECK(sup_norm(stereographic(s) - i) <= 1e-15);

  const SphereField z = inverse_stereographic(ComplexField(g));
  CHECK(sup_distance(z.s, constant_vector_field(g, {0, 0, 1})) == 0.0);
}

TEST_CASE("stereographic round trips", "[sphere][property]") {
  const Grid g = Grid::cube(3, 8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexField u = random_small(g, seed, 3.0 / std::sqrt(2.0));  // |u| <= 3
    const SphereField s = inverse_stereographic(u);
    CHECK(s.unit_norm_defect() <= 1e-14);
    CHECK(sup_norm(stereographic(s) - u) <= 1e-12);
    // Small perturbation of Q.
    const SphereField p = inverse_stereographic(random_small(g, seed + 50, 0.1));
    CHECK(sup_distance(inverse_stereographic(stereographic(p)).s, p.s) <= 1e-12);
  }
}

TEST_CASE("other base points use a pre-rotation", "[sphere]") {
  const Grid g = Grid::cube(3, 8);
  const ComplexField u = random_small(g, 3, 0.5);
  for (Vec3 q : {Vec3{1, 0, 0}, Vec3{0, 0, -1}, Vec3{0.6, 0.0, 0.8}}) {
    const SphereField s = inverse_stereographic(u, q);
    CHECK(s.unit_norm_defect() <= 1e-14);
    CHECK(sup_norm(stereographic(s) - u) <= 1e-12);
    const SphereField base = inverse_stereographic(ComplexField(g), q);
    CHECK(sup_distance(base.s, constant_vector_field(g, q)) <= 1e-15);
  }
}

TEST_CASE("pole guard and degenerate fields fail loudly", "[sphere]") {
  const Grid g = Grid::cube(3, 8);
  SphereField south{constant_vector_field(g, {0, 0, -1})};
  CHECK_THROWS_AS(stereographic(south), SingularityError);
  SphereField zero{constant_vector_field(g, {0, 0, 0})};
  CHECK_THROWS_AS(renormalize(zero), DegenerateFieldError);
  SphereField longer{constant_vector_field(g, {0, 0, 1.1})};
  CHECK_THROWS_AS(llg_rhs(longer, LlgParams{}), DomainError);
}

TEST_CASE("rotation about the base axis multiplies u by e^{i theta}", "[sphere][property]") {
  const Grid g = Grid::cube(3, 16);
  const SphereField s = smooth_unit_field(g, 0.3);
  const double theta = std::numbers::pi / 2;
  SphereField r = s;
  r.s = rotate(s.s, {0, 0, 1}, theta);
  ComplexField want = stereographic(s);
  want *= std::exp(cplx(0, theta));
  CHECK(sup_norm(stereographic(r) - want) <= 1e-14);
}

TEST_CASE("llg_rhs: fixed points, eps = 0 and tangency", "[sphere]") {
  const Grid g = Grid::cube(3, 16);
  SphereField q{constant_vector_field(g, {0, 0, 1})};
  CHECK(sup_distance(llg_rhs(q, LlgParams{1.0, 0.7}), constant_vector_field(g, {0, 0, 0})) == 0.0);

  const SphereField s = smooth_unit_field(g, 0.4);
  // eps = 0 is the Schroedinger map s x Ds (then tangent projection).
  const auto rhs0 = llg_rhs(s, LlgParams{1.0, 0.0});
  VectorField3 lap = make_vector_field(g);
  for (int c = 0; c < 3; ++c) lap[c] = laplacian(s.s[c]);
  VectorField3 sm = cross(s.s, lap);
  for (auto& c : sm) c = dealias(c);
  const RealField normal = dot(sm, s.s);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.point_count(); ++i) sm[c][i] -= normal[i] * s.s[c][i];
  CHECK(sup_distance(rhs0, sm) <= 1e-12);

  for (double eps : {0.0, 0.1, 1.0}) {
    const auto v = llg_rhs(s, LlgParams{1.0, eps});
    CHECK(sup_norm(dot(v, s.s)) <= 1e-10);
  }
}

TEST_CASE("renormalize and Dirichlet energy", "[sphere]") {
  const Grid g = Grid::cube(3, 16);
  const SphereField s = smooth_unit_field(g, 0.3);
  CHECK(sup_distance(renormalize(s).s, s.s) <= 1e-15);
  SphereField q{constant_vector_field(g, {0, 0, 1})};
  CHECK(dirichlet_energy(q) == 0.0);

  // s = P^{-1}(delta e^{ix}) = (2 delta cos x, 2 delta sin x, 1 - delta^2)/(1 + delta^2):
  // |d_x s|^2 = 4 delta^2 / (1 + delta^2)^2, constant in x.
  const double delta = 0.2;
  const ComplexField u = ComplexField::sample(g, [&](double x, double, double) { return delta * std::exp(cplx(0, x)); });
  const SphereField p = inverse_stereographic(u);
  const double oracle = 4 * delta * delta / std::pow(1 + delta * delta, 2) * g.volume();
  CHECK(dirichlet_energy(p) == Approx(oracle).epsilon(1e-10));
}
