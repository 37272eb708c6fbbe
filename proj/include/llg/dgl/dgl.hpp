#pragma once

#include "llg/core/field.hpp"
#include "llg/core/params.hpp"

// The projected equation. For u = (s1 + i s2)/(1 + s3) the LLG flow becomes
//
//   du/dt = (i a + eps) (Lap u - 2 G(u)),   G(u) = conj(u)/(1+|u|^2) sum_j (d_j u)^2,
//
// i.e. (i d_t + Lap - i eps Lap) u = (2a conj u/(1+|u|^2)) S - (2 i eps conj u/(1+|u|^2)) S
// solved for d_t u at a = 1, with the linear part carrying the factor a for
// general a.

namespace llg::dgl {

enum class NonlinearityMode { rational, taylor, none };

struct Nonlinearity {
  NonlinearityMode mode = NonlinearityMode::rational;
  int taylor_order = 8;  // K, used by the taylor mode
};

/// Coefficients of du/dt = linear * Lap u + nonlinear * G(u).
struct DglCoefficients {
  cplx linear;
  cplx nonlinear;
};

/// The single place where the factors and signs of the projected equation live.
DglCoefficients dgl_coefficients(const LlgParams& params);

/// sum_j (d_j u)^2 with spectral derivatives (complex squares, no conjugate).
ComplexField gradient_square_sum(const ComplexField& u);

/// G(u) pointwise; the result is truncated to the 2/3 band when `dealiased`.
ComplexField g_nonlinearity(const ComplexField& u, bool dealiased = true);

/// Partial sum conj(u) sum_{k=0}^{K} (-|u|^2)^k S. Throws DomainError if
/// ||u||_inf >= 1 (outside the radius of convergence).
ComplexField g_taylor(const ComplexField& u, int order, bool dealiased = true);

/// du/dt of the projected equation in physical space (rational G).
ComplexField dgl_rhs(const ComplexField& u, const LlgParams& params);

/// Spectral evaluation: given U = F[u], returns nonlinear * dealias(F[G(u)]).
SpectralField nonlinear_term(const SpectralField& U, const LlgParams& params,
                             const Nonlinearity& nl = {});

/// du/dt in spectral form: linear * (-|xi|^2) U + nonlinear_term(U).
SpectralField dgl_rhs(const SpectralField& U, const LlgParams& params, const Nonlinearity& nl = {});

/// nonlinear * dealias(F[G(b + w) - G(b)]) from the spectra of b and w,
/// evaluated so that the result stays proportional to w (no cancellation
/// between two O(1) values). Rational mode only.
SpectralField nonlinear_increment(const SpectralField& B, const SpectralField& W,
                                  const LlgParams& params);

}  // namespace llg::dgl
