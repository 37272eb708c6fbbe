#include <catch_amalgamated.hpp>

#include <random>

#include "llg/core/field.hpp"
#include "llg/core/transform.hpp"
#include "llg/dgl/dgl.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/harness/datum.hpp"
#include "llg/simd/kernels.hpp"

using namespace llg;

namespace {

std::vector<cplx> random_cplx(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Restores the active level when a test switches it.
struct LevelGuard {
  simd::Level saved = simd::active_level();
  ~LevelGuard() { simd::set_active_level(saved); }
};

}  // namespace

TEST_CASE("scalar and AVX2 elementwise kernels are bit-identical", "[simd]") {
  if (!simd::supported(simd::Level::avx2)) SKIP("CPU lacks AVX2");
  const auto& s = simd::kernels(simd::Level::scalar);
  const auto& v = simd::kernels(simd::Level::avx2);
  // Lengths exercise the vector body and every tail size.
  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 1001u}) {
    const auto a = random_cplx(n, 1), b = random_cplx(n, 2);
    const auto m = random_real(n, 3);

    auto x = a, y = a;
    s.mul_real(x.data(), m.data(), n);
    v.mul_real(y.data(), m.data(), n);
    CHECK(x == y);

    x = a, y = a;
    s.mul_complex(x.data(), b.data(), n);
    v.mul_complex(y.data(), b.data(), n);
    CHECK(x == y);

    x = a, y = a;
    s.scale(x.data(), 0.37, n);
    v.scale(y.data(), 0.37, n);
    CHECK(x == y);

    x = a, y = a;
    s.axpy(x.data(), cplx(0.3, -1.1), b.data(), n);
    v.axpy(y.data(), cplx(0.3, -1.1), b.data(), n);
    CHECK(x == y);

    x = a, y = a;
    s.accumulate_square(x.data(), b.data(), n);
    v.accumulate_square(y.data(), b.data(), n);
    CHECK(x == y);

    std::vector<cplx> o1(n), o2(n);
    s.dgl_pointwise(a.data(), b.data(), o1.data(), n);
    v.dgl_pointwise(a.data(), b.data(), o2.data(), n);
    CHECK(o1 == o2);

    std::array<std::vector<double>, 3> u{random_real(n, 4), random_real(n, 5), random_real(n, 6)};
    std::array<std::vector<double>, 3> w{random_real(n, 7), random_real(n, 8), random_real(n, 9)};
    std::array<std::vector<double>, 3> r1{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    auto r2 = r1;
    const double* up[3] = {u[0].data(), u[1].data(), u[2].data()};
    const double* wp[3] = {w[0].data(), w[1].data(), w[2].data()};
    double* p1[3] = {r1[0].data(), r1[1].data(), r1[2].data()};
    double* p2[3] = {r2[0].data(), r2[1].data(), r2[2].data()};
    s.cross3(up, wp, p1, n);
    v.cross3(up, wp, p2, n);
    CHECK(r1 == r2);
  }
}

TEST_CASE("scalar and AVX2 reductions agree to rounding", "[simd]") {
  if (!simd::supported(simd::Level::avx2)) SKIP("CPU lacks AVX2");
  const auto& s = simd::kernels(simd::Level::scalar);
  const auto& v = simd::kernels(simd::Level::avx2);
  for (std::size_t n : {1u, 3u, 7u, 64u, 4099u}) {
    const auto a = random_cplx(n, 10);
    const auto w = random_real(n, 11);
    const double s1 = s.sum_abs2(a.data(), n), s2 = v.sum_abs2(a.data(), n);
    CHECK(std::abs(s1 - s2) <= 1e-13 * s1);
    const double w1 = s.weighted_sum_abs2(a.data(), w.data(), n);
    const double w2 = v.weighted_sum_abs2(a.data(), w.data(), n);
    CHECK(std::abs(w1 - w2) <= 1e-13 * s.weighted_sum_abs2(a.data(), std::vector<double>(n, 1.0).data(), n) * 10);
  }
  CHECK(s.sum_abs2(nullptr, 0) == 0.0);
  CHECK(v.sum_abs2(nullptr, 0) == 0.0);
}

TEST_CASE("a full solver step is identical under both kernel levels", "[simd]") {
  if (!simd::supported(simd::Level::avx2)) SKIP("CPU lacks AVX2");
  LevelGuard guard;
  const Grid g = Grid::cube(3, 16);
  harness::DatumSpec d;
  d.amplitude = 0.3;
  const ComplexField u0 = harness::make_datum(g, d);
  simd::set_active_level(simd::Level::scalar);
  const ComplexField a = evolve::step_dgl(u0, 0.01, LlgParams{1.0, 0.1});
  simd::set_active_level(simd::Level::avx2);
  const ComplexField b = evolve::step_dgl(u0, 0.01, LlgParams{1.0, 0.1});
  CHECK(sup_norm(a - b) <= 1e-14 * sup_norm(a));
}

TEST_CASE("active level can be forced and reported", "[simd]") {
  LevelGuard guard;
  simd::set_active_level(simd::Level::scalar);
  CHECK(simd::active_level() == simd::Level::scalar);
  CHECK(std::string(simd::level_name(simd::Level::scalar)) == "scalar");
  if (!simd::supported(simd::Level::avx2)) CHECK_THROWS_AS(simd::set_active_level(simd::Level::avx2), ConfigError);
}
