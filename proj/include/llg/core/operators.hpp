#pragma once

#include <functional>
#include <span>
#include <vector>

#include "llg/core/field.hpp"

namespace llg {

using Multiplier = std::function<cplx(const Wavevector&)>;

/// Coefficient-wise product with m(xi). Throws DomainError if m is not
/// finite at some grid wavevector.
SpectralField apply_multiplier(SpectralField F, const Multiplier& m);
/// Coefficient-wise product with a precomputed real symbol (one value per
/// coefficient, FFT storage order).
SpectralField apply_multiplier(SpectralField F, std::span<const double> symbol);
SpectralField apply_multiplier(SpectralField F, std::span<const cplx> symbol);

/// Multiplier -|xi|^2.
SpectralField spectral_laplacian(SpectralField F);
/// Multiplier i xi_axis.
SpectralField spectral_derivative(SpectralField F, int axis);

ComplexField laplacian(const ComplexField& f);
RealField laplacian(const RealField& f);
/// One field per active axis.
std::vector<ComplexField> gradient(const ComplexField& f);
std::vector<RealField> gradient(const RealField& f);

/// 2/3 rule: zero every coefficient with 3|m_j| > N_j on some axis.
SpectralField dealias(SpectralField F);
void dealias_inplace(SpectralField& F);
/// Physical-space convenience: transform, truncate, transform back.
ComplexField dealias(const ComplexField& f);
RealField dealias(const RealField& f);

/// True when every coefficient outside the 2/3 band is exactly zero.
bool is_dealiased(const SpectralField& F);

}  // namespace llg
