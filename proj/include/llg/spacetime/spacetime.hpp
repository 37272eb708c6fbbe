#pragma once

#include <functional>
#include <string>
#include <vector>

#include "llg/core/field.hpp"
#include "llg/core/trajectory.hpp"
#include "llg/lp/bump.hpp"

namespace llg::spacetime {

/// C^inf time window on [0, T]: 0 at both ends, 1 on [0.1 T, 0.9 T], with
/// the exp(-1/t) smoothstep on the two ramps.
double time_window(double t, double T);
double time_window_derivative(double t, double T);
inline constexpr double kWindowRamp = 0.1;

/// Space-time samples f(x, t_i), i = 0 .. M-1, t_i = i dt, periodized with
/// period T = M dt, and their coefficients.
///
/// Normalization: space as in SpectralField, time c = sqrt(T)/M DFT_t with
/// f(t) = T^{-1/2} sum_m c_m exp(+i tau_m t), tau_m = 2 pi m / T. Then
/// sum |f|^2 dV dt = sum |c|^2, and (i d_t + Lap) acts as -(tau + |xi|^2).
class SpaceTimeField {
 public:
  /// Uses samples 0 .. M-1 of a uniform trajectory with M = size - 1
  /// (the last sample t_M = T is the periodic image of t_0). When
  /// `windowed`, multiplies sample i by time_window(t_i, T).
  static SpaceTimeField from_trajectory(const Trajectory& traj, bool windowed = true);
  /// Samples f(x0, x1, x2, t) on `grid` at t_i = i dt, i < M.
  static SpaceTimeField sample(const Grid& grid, int M, double dt,
                               const std::function<cplx(double, double, double, double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  int time_samples() const noexcept { return M_; }
  double dt() const noexcept { return dt_; }
  double period() const noexcept { return M_ * dt_; }
  bool windowed() const noexcept { return windowed_; }
  /// Temporal frequency of storage index m.
  double tau(int m) const noexcept;

  /// Physical samples, [M][points].
  std::span<const cplx> samples() const noexcept { return samples_; }
  /// Space-time coefficients, [M][points] in FFT storage order.
  const std::vector<cplx>& coeffs() const;

  /// New field from coefficients on the same lattice.
  SpaceTimeField with_coeffs(std::vector<cplx> coeffs) const;
  /// New field from physical samples on the same lattice.
  SpaceTimeField with_samples(std::vector<cplx> samples) const;

  /// sum |f|^2 dV dt.
  double l2_norm() const;
  /// Max over time of the jump |f(t_M) - f(t_0)| the periodic extension sees
  /// (zero for windowed data).
  double periodic_jump() const noexcept { return jump_; }

 private:
  SpaceTimeField(Grid grid, int M, double dt) : grid_(std::move(grid)), M_(M), dt_(dt) {}
  void compute_coeffs() const;

  Grid grid_;
  int M_;
  double dt_;
  bool windowed_ = false;
  double jump_ = 0.0;
  std::vector<cplx> samples_;
  mutable std::vector<cplx> coeffs_;
  mutable bool have_coeffs_ = false;
};

/// Modulation tau + |xi|^2 of every space-time coefficient, [M][points].
std::vector<double> modulation_table(const SpaceTimeField& F);

/// Modulation shells covering the nonzero modulations of F:
/// j_min from the temporal resolution 2 pi / T, j_max so that chi_{<= j_max} = 1
/// on every stored modulation.
lp::ShellRange modulation_range(const SpaceTimeField& F);

/// Q_j: multiplier chi_j(|tau + |xi|^2|).
SpaceTimeField modulation_project(const SpaceTimeField& F, int j);
/// Q_{<=j}: multiplier chi_{<=j}(|tau + |xi|^2|).
SpaceTimeField modulation_project_below(const SpaceTimeField& F, int j);
/// ||Q_j F||^2 / ||F||^2 and ||Q_{<=j} F||^2 / ||F||^2 (by Parseval).
double modulation_mass_fraction(const SpaceTimeField& F, int j);
double modulation_mass_below(const SpaceTimeField& F, int j);

struct X01Report {
  double spectral = 0.0;  // || (tau + |xi|^2) F ||
  double physical = 0.0;  // || (i d_t + Lap) f ||, spectral derivatives on samples
  double relative_gap = 0.0;
  /// The discrete norm acts on the windowed, periodized field and does not
  /// quotient by free solutions.
  std::string caveat;
};

X01Report x01_norm(const SpaceTimeField& F);

/// sup | -2 grad u . grad v - [(L u) v + u (L v) - L (u v)] |, L = i d_t + Lap,
/// after truncating u, v to the space 2/3 band and the time band 3|m| < M
/// and truncating the residual to the same bands (products of band-limited
/// fields alias only outside them).
double null_identity_residual(const SpaceTimeField& u, const SpaceTimeField& v);

/// |xi1|^2 + |xi2|^2 - |xi1 + xi2|^2.
double resonance(const Wavevector& xi1, const Wavevector& xi2);

struct StrichartzReport {
  double value = 0.0;
  double space_exponent = 6.0;  // 2n/(n-2)
  /// Set for n != 3: n = 2 makes the exponent infinite, n = 1 negative;
  /// both fall back to L^inf in space.
  bool flagged = false;
  std::string note;
};

/// Discrete L^2_t L^p_x over samples t_0 .. t_{M-1}, p = 2n/(n-2).
StrichartzReport strichartz_norm(const Trajectory& traj);

/// Stable key for a trajectory: FNV-1a 64 of its manifest fields.
std::string trajectory_key(const Trajectory& traj);

}  // namespace llg::spacetime
