#include "llg/core/operators.hpp"

#include <cmath>

#include "llg/core/transform.hpp"
#include "llg/simd/kernels.hpp"

namespace llg {

SpectralField apply_multiplier(SpectralField F, const Multiplier& m) {
  const Grid& g = F.grid();
  for (std::size_t p = 0; p < F.size(); ++p) {
    const cplx v = m(g.wavevector(p));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("multiplier is not finite at a grid wavevector");
    F[p] *= v;
  }
  return F;
}

SpectralField apply_multiplier(SpectralField F, std::span<const double> symbol) {
  if (symbol.size() != F.size()) throw SizeMismatchError("multiplier table size mismatch");
  if (!all_finite(symbol)) throw DomainError("multiplier table has non-finite entries");
  simd::kernels().mul_real(F.data(), symbol.data(), F.size());
  return F;
}

SpectralField apply_multiplier(SpectralField F, std::span<const cplx> symbol) {
  if (symbol.size() != F.size()) throw SizeMismatchError("multiplier table size mismatch");
  if (!all_finite(symbol)) throw DomainError("multiplier table has non-finite entries");
  simd::kernels().mul_complex(F.data(), symbol.data(), F.size());
  return F;
}

SpectralField spectral_laplacian(SpectralField F) {
  const auto xi2 = F.grid().xi_squared();
  for (std::size_t p = 0; p < F.size(); ++p) F[p] *= -xi2[p];
  return F;
}

SpectralField spectral_derivative(SpectralField F, int axis) {
  const Grid& g = F.grid();
  if (axis < 0 || axis >= g.dim()) throw RangeError("derivative axis out of range");
  // The Nyquist mode has no odd partner; its first derivative is set to zero
  // so that real fields keep real derivatives.
  std::vector<double> k(g.axis_wavenumbers(axis).begin(), g.axis_wavenumbers(axis).end());
  k[g.size(axis) / 2] = 0.0;
  std::size_t p = 0;
  for (int i0 = 0; i0 < g.size(0); ++i0)
    for (int i1 = 0; i1 < g.size(1); ++i1)
      for (int i2 = 0; i2 < g.size(2); ++i2, ++p) {
        const double kj = k[axis == 0 ? i0 : axis == 1 ? i1 : i2];
        F[p] = cplx(-kj * F[p].imag(), kj * F[p].real());
      }
  return F;
}

ComplexField laplacian(const ComplexField& f) {
  return transform_inverse(spectral_laplacian(transform_forward(f)));
}

RealField laplacian(const RealField& f) {
  return transform_inverse_real(spectral_laplacian(transform_forward(f)));
}

std::vector<ComplexField> gradient(const ComplexField& f) {
  const SpectralField F = transform_forward(f);
  std::vector<ComplexField> out;
  for (int j = 0; j < f.grid().dim(); ++j) out.push_back(transform_inverse(spectral_derivative(F, j)));
  return out;
}

std::vector<RealField> gradient(const RealField& f) {
  const SpectralField F = transform_forward(f);
  std::vector<RealField> out;
  for (int j = 0; j < f.grid().dim(); ++j)
    out.push_back(transform_inverse_real(spectral_derivative(F, j)));
  return out;
}

void dealias_inplace(SpectralField& F) {
  simd::kernels().mul_real(F.data(), F.grid().dealias_mask().data(), F.size());
}

SpectralField dealias(SpectralField F) {
  dealias_inplace(F);
  return F;
}

ComplexField dealias(const ComplexField& f) { return transform_inverse(dealias(transform_forward(f))); }

RealField dealias(const RealField& f) { return transform_inverse_real(dealias(transform_forward(f))); }

bool is_dealiased(const SpectralField& F) {
  const auto mask = F.grid().dealias_mask();
  for (std::size_t p = 0; p < F.size(); ++p)
    if (mask[p] == 0.0 && F[p] != cplx{}) return false;
  return true;
}

}  // namespace llg
