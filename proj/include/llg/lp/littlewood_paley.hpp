#pragma once

#include <limits>
#include <span>
#include <vector>

#include "llg/core/field.hpp"
#include "llg/core/trajectory.hpp"
#include "llg/lp/bump.hpp"

namespace llg::lp {

/// chi_k(|xi|) at every grid wavevector (cached per grid and k).
std::span<const double> shell_symbol(const Grid& grid, int k);

/// Fourier multiplier chi_k(|xi|). Throws RangeError if k is outside `range`.
SpectralField project_shell(const SpectralField& F, int k, const ShellRange& range);
ComplexField project_shell(const ComplexField& f, int k);
RealField project_shell(const RealField& f, int k);

/// Fourier multiplier chi_{<=k}(|xi|). Note chi_{<=k}(0) = 1: the mean is kept.
/// Valid for k in [k_min - 1, k_max].
SpectralField project_below(const SpectralField& F, int k, const ShellRange& range);
ComplexField project_below(const ComplexField& f, int k);

/// {P_k f} over a shell range plus the separately tracked mean (xi = 0) value.
struct DyadicDecomposition {
  ShellRange range;
  std::vector<ComplexField> shells;  // shells[k - range.k_min]
  cplx mean{};                       // spatial average of f

  /// sum_k P_k f + mean.
  ComplexField reconstruct() const;
};

DyadicDecomposition decompose(const ComplexField& f, const ShellRange& range);
DyadicDecomposition decompose(const ComplexField& f);

/// ||P_k f||_2 for every k in `range`, by Parseval (no inverse transforms).
std::vector<double> shell_norms(const SpectralField& F, const ShellRange& range);

/// Homogeneous Besov parameters with p = 2.
struct BesovParams {
  double s = 0.0;
  int q = 1;  // 1 or 2
};

/// Critical regularity n/2, q = 1.
BesovParams critical_params(const Grid& grid);

/// (sum_k 2^{q s k} ||P_k f||_2^q)^{1/q} over `range`. The mean mode is
/// annihilated by every chi_k and never contributes.
double besov_norm(const SpectralField& F, const BesovParams& params, const ShellRange& range);
double besov_norm(const ComplexField& f, const BesovParams& params);
double besov_norm(const RealField& f, const BesovParams& params);
double critical_besov_norm(const ComplexField& f);

/// Mean value of f (the part excluded from homogeneous norms).
cplx mean_value(const ComplexField& f);

/// Directional pieces P_{k,e_j} Theta_k^j f, j = 1..n, which sum to P_k f.
struct DirectionalDecomposition {
  std::vector<ComplexField> pieces;
  /// True when the widened cutoffs (9n and 5n shell windows) reach past the
  /// grid's wavenumber range and are effectively clamped by it.
  bool window_clamped = false;
};

DirectionalDecomposition directional_decompose(const ComplexField& f, int k);

/// Exponent in {1, 2, inf}; use kInfinity for inf.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Anisotropic space-time norm L^p_{x_axis} L^q_{(other x), t} of a trajectory
/// by Riemann sums: spatial weights dx, temporal weight dt per sample
/// (samples t_0 .. t_{M-1}); an infinite exponent takes the max over all
/// samples including t_M.
double anisotropic_norm(const Trajectory& traj, int axis, double p, double q);

}  // namespace llg::lp
