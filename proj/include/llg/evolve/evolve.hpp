#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "llg/core/field.hpp"
#include "llg/core/params.hpp"
#include "llg/core/trajectory.hpp"
#include "llg/dgl/dgl.hpp"
#include "llg/sphere/sphere_maps.hpp"

namespace llg::evolve {

using dgl::Nonlinearity;
using dgl::NonlinearityMode;

/// The semigroup exp(t (i a + eps) Lap), applied exactly in Fourier space.
class Propagator {
 public:
  Propagator(Grid grid, LlgParams params);

  const Grid& grid() const noexcept { return grid_; }
  const LlgParams& params() const noexcept { return params_; }

  /// Symbol exp(-(i a + eps) |xi|^2 t) per coefficient. Throws DomainError
  /// for t < 0 when eps > 0 (the dissipative semigroup runs forward only).
  std::span<const cplx> symbol(double t) const;
  SpectralField apply(SpectralField U, double t) const;

  /// Same symbol without the forward-time restriction; used by quadrature
  /// rules that evaluate the integrand slightly past its endpoint.
  std::span<const cplx> symbol_unchecked(double t) const;

 private:
  Grid grid_;
  LlgParams params_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::shared_ptr<const std::vector<cplx>>> cache_;
};

SpectralField linear_propagate(const SpectralField& U, double t, const LlgParams& params);
ComplexField linear_propagate(const ComplexField& u0, double t, const LlgParams& params);
/// The a = 1 semigroup exp(t (i + eps) Lap).
ComplexField linear_propagate(const ComplexField& u0, double t, double epsilon);

/// Integrating-factor RK4 for the projected equation. With v = E(-t) u the
/// stiff part disappears for every eps, and classical RK4 is applied to v.
class DglIntegrator {
 public:
  DglIntegrator(Grid grid, LlgParams params, double dt, Nonlinearity nl = {});

  double dt() const noexcept { return dt_; }
  /// One step in place. Throws BlowUpError(step_index) on non-finite output.
  void step(SpectralField& U, long step_index = 0) const;

 private:
  SpectralField rhs(const SpectralField& U) const;

  Grid grid_;
  LlgParams params_;
  double dt_;
  Nonlinearity nl_;
  std::vector<cplx> full_;  // E(dt)
  std::vector<cplx> half_;  // E(dt/2)
};

ComplexField step_dgl(const ComplexField& u, double dt, const LlgParams& params, const Nonlinearity& nl = {});

/// Classical RK4 on the componentwise LLG system followed by renormalization.
class LlgIntegrator {
 public:
  LlgIntegrator(LlgParams params, double dt);

  double dt() const noexcept { return dt_; }
  /// One step. `drift`, if given, receives max | |s| - 1 | before renormalization.
  sphere::SphereField step(const sphere::SphereField& s, long step_index = 0, double* drift = nullptr) const;

 private:
  LlgParams params_;
  double dt_;
};

sphere::SphereField step_llg(const sphere::SphereField& s, double dt, const LlgParams& params);

struct SolveOptions {
  double T = 0.0;
  double dt = 0.0;
  int sample_every = 1;      // store every k-th step
  Nonlinearity nl;
  double smallness = 0.05;   // delta, in the critical Besov norm
  bool track_norms = true;   // critical Besov norm per stored sample
  bool track_energy = false; // sphere path: Dirichlet energy after every step
  std::string datum;
};

struct SolveReport {
  double smallness = 0.05;
  double initial_critical_norm = 0.0;
  double sup_critical_norm = 0.0;
  bool small_data = true;     // initial norm below delta
  bool smallness_kept = true; // sup_t norm <= C delta with C = 5
  long steps = 0;
  double max_unit_drift = 0.0;     // sphere path only
  std::vector<double> energies;    // sphere path, per step incl. t = 0
  std::vector<std::string> warnings;
};

struct Solution {
  Trajectory trajectory;
  SolveReport report;
};

struct SphereSolution {
  sphere::SphereTrajectory trajectory;
  SolveReport report;
};

/// Number of steps T/dt; throws ConfigError unless it is a positive integer.
long step_count(double T, double dt);

Solution solve(const ComplexField& u0, const LlgParams& params, const SolveOptions& options);
SphereSolution solve(const sphere::SphereField& s0, const LlgParams& params, const SolveOptions& options);

/// Phi(u)(t_i) = E(t_i) u0 + int_0^{t_i} E(t_i - s) N(u(s)) ds with N the full
/// nonlinear term of the projected equation. The integral uses Simpson's
/// rule on the samples (3/8 rule to start odd indices, a four-point rule for
/// the first interval) with the exact semigroup between samples.
Trajectory duhamel_map(const Trajectory& candidate, const ComplexField& u0, const LlgParams& params,
                       const Nonlinearity& nl = {});

struct PicardState {
  int iterate = 0;
  Trajectory current;
  /// differences[m-1] = d_m = sup_t ||u^(m) - u^(m-1)||, critical Besov norm.
  std::vector<double> differences;

  /// d_{m+1} / d_m for m = 1 .. iterate - 1.
  std::vector<double> ratios() const;
};

/// u^(0) = free evolution on the sample times t_i = i dt of [0, T]; then
/// `iterations` applications of Phi. Iterates are advanced in increment form
/// so the differences d_m are not limited by cancellation.
PicardState picard_iterate(const ComplexField& u0, const LlgParams& params, double T, double dt,
                           int iterations);

/// v(x) = u(lambda x) by index dilation. Throws ConfigError unless lambda >= 1
/// divides every active axis size.
ComplexField dilate(const ComplexField& u, int lambda);

/// v(x, t) = u(lambda x, lambda^2 t): sample i moves to time t_i / lambda^2.
Trajectory scaling_transform(const Trajectory& traj, int lambda);

/// sup over interior samples of || D_t u - dgl_rhs(u) ||_inf with a
/// fourth-order centered difference for D_t.
double discrete_residual(const Trajectory& traj, const LlgParams& params);

/// Directory with one snapshot per sample and manifest.json
/// {times, files, params, dt, integrator, datum, grid}.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& dir);
void write_trajectory(const std::filesystem::path& dir, const sphere::SphereTrajectory& traj);
sphere::SphereTrajectory read_sphere_trajectory(const std::filesystem::path& dir);

}  // namespace llg::evolve
