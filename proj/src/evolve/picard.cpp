#include <algorithm>
#include <cmath>

#include "llg/core/transform.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/lp/littlewood_paley.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::evolve {
namespace {

using Samples = std::vector<SpectralField>;

void add_scaled(SpectralField& y, cplx alpha, const SpectralField& x, std::span<const cplx> symbol) {
  SpectralField t = x;
  simd::kernels().mul_complex(t.data(), symbol.data(), t.size());
  simd::kernels().axpy(y.data(), alpha, t.data(), y.size());
}

SpectralField propagated(const SpectralField& x, std::span<const cplx> symbol) {
  SpectralField t = x;
  simd::kernels().mul_complex(t.data(), symbol.data(), t.size());
  return t;
}

/// Q_i = int_0^{t_i} E(t_i - s) N(s) ds from samples N_j = N(t_j), t_j = j h.
/// Even i: composite Simpson. Odd i >= 3: Simpson 3/8 on [0, 3h], then
/// Simpson pairs. i = 1: four-point rule h (9 f0 + 19 f1 - 5 f2 + f3) / 24.
Samples duhamel_quadrature(const Samples& N, double h, const Propagator& prop) {
  const std::size_t M = N.size();
  if (M < 4) throw DomainError("Duhamel quadrature needs at least four samples");
  const Grid& g = N.front().grid();
  const auto E1 = prop.symbol(h), E2 = prop.symbol(2 * h), E3 = prop.symbol(3 * h);

  Samples Q(M, SpectralField(g));
  auto simpson_pair = [&](std::size_t i) {
    // Q_i = E(2h) Q_{i-2} + h/3 (E(2h) N_{i-2} + 4 E(h) N_{i-1} + N_i)
    SpectralField q = propagated(Q[i - 2], E2);
    add_scaled(q, h / 3, N[i - 2], E2);
    add_scaled(q, 4 * h / 3, N[i - 1], E1);
    simd::kernels().axpy(q.data(), h / 3, N[i].data(), q.size());
    Q[i] = std::move(q);
  };

  {
    SpectralField q(g);
    add_scaled(q, 9 * h / 24, N[0], E1);
    simd::kernels().axpy(q.data(), 19 * h / 24, N[1].data(), q.size());
    add_scaled(q, -5 * h / 24, N[2], prop.symbol_unchecked(-h));
    add_scaled(q, h / 24, N[3], prop.symbol_unchecked(-2 * h));
    Q[1] = std::move(q);
  }
  {
    SpectralField q(g);
    add_scaled(q, 3 * h / 8, N[0], E3);
    add_scaled(q, 9 * h / 8, N[1], E2);
    add_scaled(q, 9 * h / 8, N[2], E1);
    simd::kernels().axpy(q.data(), 3 * h / 8, N[3].data(), q.size());
    Q[3] = std::move(q);
  }
  for (std::size_t i = 2; i < M; i += 2) simpson_pair(i);
  for (std::size_t i = 5; i < M; i += 2) simpson_pair(i);
  return Q;
}

double critical_norm(const SpectralField& U) {
  return lp::besov_norm(U, lp::critical_params(U.grid()), lp::default_shell_range(U.grid()));
}

double sup_critical(const Samples& W) {
  double m = 0.0;
  for (const auto& w : W) m = std::max(m, critical_norm(w));
  return m;
}

void check_finite(const Samples& S) {
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!all_finite(S[i].coeffs())) throw BlowUpError("non-finite Duhamel iterate", static_cast<long>(i));
}

Trajectory to_trajectory(const Samples& U, double h, const LlgParams& params) {
  Trajectory t;
  t.meta = RunMetadata{params, h, "picard-simpson", ""};
  for (std::size_t i = 0; i < U.size(); ++i) t.push_back(static_cast<double>(i) * h, transform_inverse(U[i]));
  return t;
}

}  // namespace

Trajectory duhamel_map(const Trajectory& candidate, const ComplexField& u0, const LlgParams& params,
                       const Nonlinearity& nl) {
  if (candidate.empty()) throw DomainError("empty candidate trajectory");
  candidate.snapshots.front().check_same(u0);
  const double h = candidate.sample_interval();
  if (std::abs(candidate.times.front()) > 1e-12) throw DomainError("candidate must start at t = 0");
  const Propagator prop(u0.grid(), params);

  Samples N;
  for (const auto& u : candidate.snapshots) N.push_back(dgl::nonlinear_term(transform_forward(u), params, nl));
  Samples Q = duhamel_quadrature(N, h, prop);

  const SpectralField U0 = transform_forward(u0);
  for (std::size_t i = 0; i < Q.size(); ++i) Q[i] += prop.apply(U0, candidate.times[i]);
  check_finite(Q);
  return to_trajectory(Q, h, params);
}

std::vector<double> PicardState::ratios() const {
  std::vector<double> r;
  for (std::size_t m = 1; m < differences.size(); ++m) r.push_back(differences[m] / differences[m - 1]);
  return r;
}

PicardState picard_iterate(const ComplexField& u0, const LlgParams& params, double T, double dt, int iterations) {
  if (iterations < 1) throw RangeError("need at least one Picard iteration");
  const long steps = step_count(T, dt);
  const Propagator prop(u0.grid(), params);
  const SpectralField U0 = transform_forward(u0);

  // u^(0): free evolution.
  Samples prev;
  for (long i = 0; i <= steps; ++i) prev.push_back(prop.apply(U0, static_cast<double>(i) * dt));

  PicardState state;
  // w^1 = Phi(u^0) - u^0 = Quad[N(u^0)].
  Samples N;
  for (const auto& u : prev) N.push_back(dgl::nonlinear_term(u, params));
  Samples w = duhamel_quadrature(N, dt, prop);
  check_finite(w);
  state.differences.push_back(sup_critical(w));

  // w^{m+1} = Quad[N(u^{m-1} + w^m) - N(u^{m-1})], u^m = u^{m-1} + w^m.
  for (int m = 1; m < iterations; ++m) {
    for (std::size_t i = 0; i < prev.size(); ++i) N[i] = dgl::nonlinear_increment(prev[i], w[i], params);
    for (std::size_t i = 0; i < prev.size(); ++i) prev[i] += w[i];
    w = duhamel_quadrature(N, dt, prop);
    check_finite(w);
    state.differences.push_back(sup_critical(w));
  }
  for (std::size_t i = 0; i < prev.size(); ++i) prev[i] += w[i];
  state.iterate = iterations;
  state.current = to_trajectory(prev, dt, params);
  return state;
}

}  // namespace llg::evolve
