#include <algorithm>
#include <cmath>

#include "llg/core/transform.hpp"
#include "llg/evolve/evolve.hpp"
#include "llg/lp/littlewood_paley.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::evolve {
namespace {

constexpr double kSmallnessFactor = 5.0;
constexpr double kPoleGuard = 0.1;

void check_finite(const SpectralField& U, long step) {
  if (!all_finite(U.coeffs())) throw BlowUpError("non-finite values after step " + std::to_string(step), step);
}

SpectralField times(const SpectralField& U, std::span<const cplx> symbol) {
  SpectralField out = U;
  simd::kernels().mul_complex(out.data(), symbol.data(), out.size());
  return out;
}

void axpy(SpectralField& y, cplx alpha, const SpectralField& x) {
  simd::kernels().axpy(y.data(), alpha, x.data(), y.size());
}

double critical_norm(const SpectralField& U) {
  return lp::besov_norm(U, lp::critical_params(U.grid()), lp::default_shell_range(U.grid()));
}

/// min over the grid of 1 + s.Q (the stereographic denominator after rotation).
double pole_margin(const sphere::SphereField& s) {
  double m = 2.0;
  for (std::size_t p = 0; p < s.s[0].size(); ++p) {
    double d = 0.0;
    for (int c = 0; c < 3; ++c) d += s.s[c][p] * s.base_point[c];
    m = std::min(m, 1.0 + d);
  }
  return m;
}

void finish_report(SolveReport& r, const std::string& where) {
  r.small_data = r.initial_critical_norm <= r.smallness;
  r.smallness_kept = r.sup_critical_norm <= kSmallnessFactor * r.smallness;
  if (!r.small_data)
    r.warnings.push_back(where + ": initial critical Besov norm exceeds the smallness threshold delta");
}

}  // namespace

Propagator::Propagator(Grid grid, LlgParams params) : grid_(std::move(grid)), params_(params) {
  if (params_.epsilon < 0.0) throw DomainError("damping epsilon must be non-negative");
}

std::span<const cplx> Propagator::symbol(double t) const {
  if (t < 0.0 && params_.epsilon > 0.0)
    throw DomainError("the dissipative semigroup is defined for t >= 0 only");
  return symbol_unchecked(t);
}

std::span<const cplx> Propagator::symbol_unchecked(double t) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(t); it != cache_.end()) return *it->second;
  }
  const auto xi2 = grid_.xi_squared();
  auto table = std::make_shared<std::vector<cplx>>(xi2.size());
  for (std::size_t p = 0; p < xi2.size(); ++p) {
    const double decay = std::exp(-params_.epsilon * xi2[p] * t);
    const double phase = -params_.a * xi2[p] * t;
    (*table)[p] = cplx(decay * std::cos(phase), decay * std::sin(phase));
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(t, std::move(table));
  return *it->second;
}

SpectralField Propagator::apply(SpectralField U, double t) const {
  if (U.grid() != grid_) throw SizeMismatchError("propagator and field grids differ");
  const auto sym = symbol(t);
  simd::kernels().mul_complex(U.data(), sym.data(), U.size());
  return U;
}

SpectralField linear_propagate(const SpectralField& U, double t, const LlgParams& params) {
  return Propagator(U.grid(), params).apply(U, t);
}

ComplexField linear_propagate(const ComplexField& u0, double t, const LlgParams& params) {
  return transform_inverse(linear_propagate(transform_forward(u0), t, params));
}

ComplexField linear_propagate(const ComplexField& u0, double t, double epsilon) {
  return linear_propagate(u0, t, LlgParams{1.0, epsilon});
}

DglIntegrator::DglIntegrator(Grid grid, LlgParams params, double dt, Nonlinearity nl)
    : grid_(std::move(grid)), params_(params), dt_(dt), nl_(nl) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const Propagator prop(grid_, params_);
  const auto f = prop.symbol(dt), h = prop.symbol(dt / 2);
  full_.assign(f.begin(), f.end());
  half_.assign(h.begin(), h.end());
}

SpectralField DglIntegrator::rhs(const SpectralField& U) const { return dgl::nonlinear_term(U, params_, nl_); }

void DglIntegrator::step(SpectralField& U, long step_index) const {
  const double h = dt_;
  const SpectralField k1 = rhs(U);

  SpectralField stage = U;
  axpy(stage, h / 2, k1);
  const SpectralField k2 = rhs(times(stage, half_));

  const SpectralField eu_half = times(U, half_);
  stage = eu_half;
  axpy(stage, h / 2, k2);
  const SpectralField k3 = rhs(stage);

  const SpectralField ek3 = times(k3, half_);
  stage = times(U, full_);
  axpy(stage, h, ek3);
  const SpectralField k4 = rhs(stage);

  // U <- E U + h/6 (E k1 + 2 E2 k2 + 2 E2 k3 + k4)
  SpectralField acc = times(k1, full_);
  axpy(acc, 2.0, times(k2, half_));
  axpy(acc, 2.0, ek3);
  acc += k4;
  U = times(U, full_);
  axpy(U, h / 6, acc);
  check_finite(U, step_index);
}

ComplexField step_dgl(const ComplexField& u, double dt, const LlgParams& params, const Nonlinearity& nl) {
  SpectralField U = transform_forward(u);
  DglIntegrator(u.grid(), params, dt, nl).step(U);
  return transform_inverse(U);
}

LlgIntegrator::LlgIntegrator(LlgParams params, double dt) : params_(params), dt_(dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (params.epsilon < 0.0) throw DomainError("damping epsilon must be non-negative");
}

sphere::SphereField LlgIntegrator::step(const sphere::SphereField& s, long step_index, double* drift) const {
  using sphere::VectorField3;
  const double h = dt_;
  auto shifted = [&](const VectorField3& k, double c) {
    VectorField3 out = s.s;
    for (int i = 0; i < 3; ++i)
      for (std::size_t p = 0; p < out[i].size(); ++p) out[i][p] += c * k[i][p];
    return out;
  };
  const VectorField3 k1 = sphere::llg_rhs(s, params_);
  const VectorField3 k2 = sphere::llg_field(shifted(k1, h / 2), params_);
  const VectorField3 k3 = sphere::llg_field(shifted(k2, h / 2), params_);
  const VectorField3 k4 = sphere::llg_field(shifted(k3, h), params_);

  sphere::SphereField next{s.s, s.base_point};
  for (int i = 0; i < 3; ++i) {
    for (std::size_t p = 0; p < next.s[i].size(); ++p)
      next.s[i][p] += h / 6 * (k1[i][p] + 2 * k2[i][p] + 2 * k3[i][p] + k4[i][p]);
    if (!all_finite(next.s[i].values()))
      throw BlowUpError("non-finite values after step " + std::to_string(step_index), step_index);
  }
  if (drift) *drift = next.unit_norm_defect();
  return sphere::renormalize(std::move(next));
}

sphere::SphereField step_llg(const sphere::SphereField& s, double dt, const LlgParams& params) {
  return LlgIntegrator(params, dt).step(s);
}

long step_count(double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("T and dt must be positive");
  const double r = T / dt;
  const long n = std::lround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * r)
    throw ConfigError("T must be an integer multiple of dt");
  return n;
}

Solution solve(const ComplexField& u0, const LlgParams& params, const SolveOptions& opt) {
  const long steps = step_count(opt.T, opt.dt);
  if (opt.sample_every < 1 || steps % opt.sample_every != 0)
    throw ConfigError("sample cadence must divide the step count");
  const DglIntegrator integ(u0.grid(), params, opt.dt, opt.nl);

  Solution sol;
  sol.trajectory.meta = RunMetadata{params, opt.dt, "ifrk4", opt.datum};
  sol.report.smallness = opt.smallness;
  SpectralField U = transform_forward(u0);
  if (!all_finite(U.coeffs())) throw BlowUpError("non-finite initial datum", 0);

  auto record = [&](long n) {
    sol.trajectory.push_back(static_cast<double>(n) * opt.dt, transform_inverse(U));
    if (opt.track_norms) {
      const double b = critical_norm(U);
      if (n == 0) sol.report.initial_critical_norm = b;
      sol.report.sup_critical_norm = std::max(sol.report.sup_critical_norm, b);
    }
  };
  record(0);
  for (long n = 1; n <= steps; ++n) {
    integ.step(U, n);
    if (n % opt.sample_every == 0) record(n);
  }
  sol.report.steps = steps;
  finish_report(sol.report, "solve");
  if (!opt.track_norms) sol.report.small_data = sol.report.smallness_kept = true;
  return sol;
}

SphereSolution solve(const sphere::SphereField& s0, const LlgParams& params, const SolveOptions& opt) {
  const long steps = step_count(opt.T, opt.dt);
  if (opt.sample_every < 1 || steps % opt.sample_every != 0)
    throw ConfigError("sample cadence must divide the step count");
  const LlgIntegrator integ(params, opt.dt);

  SphereSolution sol;
  sol.trajectory.meta = RunMetadata{params, opt.dt, "rk4-renormalized", opt.datum};
  sol.report.smallness = opt.smallness;
  sphere::SphereField s = sphere::renormalize(s0);

  auto record = [&](long n) {
    sol.trajectory.push_back(static_cast<double>(n) * opt.dt, s);
    if (opt.track_norms) {
      const double b = critical_norm(transform_forward(sphere::stereographic(s)));
      if (n == 0) sol.report.initial_critical_norm = b;
      sol.report.sup_critical_norm = std::max(sol.report.sup_critical_norm, b);
    }
  };
  if (opt.track_energy) sol.report.energies.push_back(sphere::dirichlet_energy(s));
  record(0);
  for (long n = 1; n <= steps; ++n) {
    double drift = 0.0;
    s = integ.step(s, n, &drift);
    sol.report.max_unit_drift = std::max(sol.report.max_unit_drift, drift);
    if (pole_margin(s) < kPoleGuard)
      throw SingularityError("sphere path reached the projection pole at step " + std::to_string(n));
    if (opt.track_energy) sol.report.energies.push_back(sphere::dirichlet_energy(s));
    if (n % opt.sample_every == 0) record(n);
  }
  sol.report.steps = steps;
  finish_report(sol.report, "solve(sphere)");
  if (!opt.track_norms) sol.report.small_data = sol.report.smallness_kept = true;
  return sol;
}

}  // namespace llg::evolve
