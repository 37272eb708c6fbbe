#pragma once

#include "llg/core/field.hpp"

namespace llg {

/// Forward transform with the unitary normalization documented on
/// SpectralField. Real input is transformed as complex data; its
/// coefficients are Hermitian-symmetric.
SpectralField transform_forward(const ComplexField& f);
SpectralField transform_forward(const RealField& f);

/// Inverse transform.
ComplexField transform_inverse(const SpectralField& F);
/// Inverse transform keeping the real part (for Hermitian coefficient sets).
RealField transform_inverse_real(const SpectralField& F);

namespace detail {

/// Unnormalized in-place DFT over the spatial axes of `grid`.
/// sign = -1 forward, +1 backward.
void fft_inplace(const Grid& grid, cplx* data, int sign);

/// Unnormalized in-place DFT of length `length` along the slowest axis of a
/// [length][batch] array, for each of the `batch` columns.
void fft_columns_inplace(int length, std::size_t batch, cplx* data, int sign);

}  // namespace detail

}  // namespace llg
