#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>

namespace llg {

using Wavevector = std::array<double, 3>;

/// Uniform periodic grid on the torus prod_j [0, L_j).
///
/// Samples are stored row-major with axis 0 slowest. Axes beyond `dim()` have
/// one point and a zero wavenumber, so every loop may run over three axes.
/// Per-axis sizes must be even powers of two, at least 8.
///
/// Fourier index m of axis j lives at storage index m mod N_j and carries the
/// wavenumber 2*pi*m/L_j, m in [-N_j/2, N_j/2).
class Grid {
 public:
  Grid(int dim, std::array<int, 3> sizes,
       std::array<double, 3> lengths = {2 * std::numbers::pi, 2 * std::numbers::pi,
                                        2 * std::numbers::pi});

  /// n-dimensional cube with `points` per axis and period `length`.
  static Grid cube(int dim, int points, double length = 2 * std::numbers::pi);

  int dim() const noexcept { return dim_; }
  int size(int axis) const noexcept { return sizes_[axis]; }
  const std::array<int, 3>& sizes() const noexcept { return sizes_; }
  double length(int axis) const noexcept { return lengths_[axis]; }
  const std::array<double, 3>& lengths() const noexcept { return lengths_; }

  std::size_t point_count() const noexcept { return count_; }
  double spacing(int axis) const noexcept { return lengths_[axis] / sizes_[axis]; }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  /// Signed Fourier index of storage position `index` along `axis`.
  int mode(int axis, int index) const noexcept;
  double wavenumber(int axis, int index) const noexcept;
  /// Fundamental (smallest nonzero) wavenumber over the active axes.
  double min_wavenumber() const noexcept;
  /// Largest |xi| over all grid wavevectors.
  double max_wavenumber_norm() const noexcept;

  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(int i0, int i1, int i2) const noexcept {
    return (static_cast<std::size_t>(i0) * sizes_[1] + i1) * sizes_[2] + i2;
  }
  Wavevector wavevector(std::size_t flat) const noexcept;
  /// Physical coordinate of sample `index` along `axis`.
  double coordinate(int axis, int index) const noexcept { return index * spacing(axis); }

  /// Per-point tables, computed on first use and shared between copies.
  std::span<const double> xi_squared() const;
  std::span<const double> xi_norm() const;
  /// Per-axis wavenumber table indexed by storage position.
  std::span<const double> axis_wavenumbers(int axis) const;
  /// 1 inside the 2/3-rule band, 0 outside.
  std::span<const double> dealias_mask() const;

  bool operator==(const Grid& other) const noexcept;
  bool operator!=(const Grid& other) const noexcept { return !(*this == other); }

  std::string describe() const;

 private:
  struct Tables;
  const Tables& tables() const;

  int dim_;
  std::array<int, 3> sizes_;
  std::array<double, 3> lengths_;
  std::size_t count_;
  std::shared_ptr<Tables> tables_;
};

}  // namespace llg
