#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

#include "llg/core/aligned.hpp"
#include "llg/core/error.hpp"
#include "llg/core/grid.hpp"

namespace llg {

/// Samples of a scalar field on a Grid (physical space).
template <class T>
class Field {
 public:
  using value_type = T;

  explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.point_count(), T{}) {}
  Field(Grid grid, aligned_vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.point_count())
      throw SizeMismatchError("field sample count does not match grid point count");
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  T* data() noexcept { return values_.data(); }
  const T* data() const noexcept { return values_.data(); }
  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }
  T& operator[](std::size_t i) noexcept { return values_[i]; }
  const T& operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Fill from f(x0, x1, x2).
  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    Field out(grid);
    std::size_t p = 0;
    for (int i0 = 0; i0 < grid.size(0); ++i0)
      for (int i1 = 0; i1 < grid.size(1); ++i1)
        for (int i2 = 0; i2 < grid.size(2); ++i2, ++p)
          out.values_[p] = static_cast<T>(
              f(grid.coordinate(0, i0), grid.coordinate(1, i1), grid.coordinate(2, i2)));
    return out;
  }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Field& operator*=(T s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(T s, Field a) { return a *= s; }

  void check_same(const Field& o) const {
    if (grid_ != o.grid_) throw SizeMismatchError("fields live on different grids");
  }

 private:
  Grid grid_;
  aligned_vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

/// Discrete Fourier coefficients of a field, in FFT storage order.
///
/// Normalization (fixed): c(xi) = sqrt(V)/N * sum_x f(x) exp(-i xi.x), so that
/// sum_x |f(x)|^2 dV = sum_xi |c(xi)|^2 and a plane wave exp(i xi.x) has the
/// single coefficient sqrt(V). The inverse is f(x) = V^{-1/2} sum_xi c exp(i xi.x).
class SpectralField {
 public:
  explicit SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.point_count()) {}
  SpectralField(Grid grid, aligned_vector<cplx> coeffs)
      : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.point_count())
      throw SizeMismatchError("coefficient count does not match grid point count");
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  cplx* data() noexcept { return coeffs_.data(); }
  const cplx* data() const noexcept { return coeffs_.data(); }
  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  SpectralField& operator+=(const SpectralField& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  SpectralField& operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }

  void check_same(const SpectralField& o) const {
    if (grid_ != o.grid_) throw SizeMismatchError("spectral fields live on different grids");
  }

 private:
  Grid grid_;
  aligned_vector<cplx> coeffs_;
};

/// Discrete L2 norm with quadrature weight dV.
double l2_norm(const ComplexField& f);
double l2_norm(const RealField& f);
/// L2 norm via Parseval; equals l2_norm of the inverse transform.
double l2_norm(const SpectralField& f);
double sup_norm(const ComplexField& f);
double sup_norm(const RealField& f);
bool all_finite(std::span<const cplx> v);
bool all_finite(std::span<const double> v);

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);

}  // namespace llg
