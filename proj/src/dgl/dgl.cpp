#include "llg/dgl/dgl.hpp"

#include <cmath>
#include <vector>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::dgl {
namespace {

ComplexField finish(ComplexField g, bool dealiased) { return dealiased ? dealias(g) : g; }

/// Physical u and its spectral gradient from U.
struct Sampled {
  ComplexField u;
  std::vector<ComplexField> grad;
};

Sampled sample(const SpectralField& U) {
  Sampled s{transform_inverse(U), {}};
  for (int j = 0; j < U.grid().dim(); ++j) s.grad.push_back(transform_inverse(spectral_derivative(U, j)));
  return s;
}

ComplexField square_sum(const std::vector<ComplexField>& grad) {
  ComplexField s(grad.front().grid());
  for (const auto& d : grad) simd::kernels().accumulate_square(s.data(), d.data(), s.size());
  return s;
}

}  // namespace

DglCoefficients dgl_coefficients(const LlgParams& p) {
  // (i d_t + Lap - i eps Lap) u = (2a - 2 i eps) G  (at a = 1)
  //   =>  d_t u = (i + eps) Lap u - i (2a - 2 i eps) G = (i + eps) (Lap u - 2 G).
  // For general a the linear part is (i a + eps) Lap, and -i(2a - 2 i eps) = -2 (i a + eps).
  const cplx c(p.epsilon, p.a);
  return {c, -2.0 * c};
}

ComplexField gradient_square_sum(const ComplexField& u) { return square_sum(gradient(u)); }

ComplexField g_nonlinearity(const ComplexField& u, bool dealiased) {
  const ComplexField s = gradient_square_sum(u);
  ComplexField g(u.grid());
  simd::kernels().dgl_pointwise(u.data(), s.data(), g.data(), g.size());
  return finish(std::move(g), dealiased);
}

ComplexField g_taylor(const ComplexField& u, int order, bool dealiased) {
  if (order < 0) throw RangeError("Taylor order must be non-negative");
  if (!(sup_norm(u) < 1.0)) throw DomainError("Taylor form of G needs ||u||_inf < 1");
  const ComplexField s = gradient_square_sum(u);
  ComplexField g(u.grid());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double r = -std::norm(u[p]);
    // Horner: sum_{k=0}^{K} r^k
    double series = 1.0;
    for (int k = 0; k < order; ++k) series = 1.0 + r * series;
    g[p] = std::conj(u[p]) * s[p] * series;
  }
  return finish(std::move(g), dealiased);
}

ComplexField dgl_rhs(const ComplexField& u, const LlgParams& params) {
  return transform_inverse(dgl_rhs(transform_forward(u), params));
}

SpectralField nonlinear_term(const SpectralField& U, const LlgParams& params, const Nonlinearity& nl) {
  if (nl.mode == NonlinearityMode::none) return SpectralField(U.grid());
  ComplexField g(U.grid());
  if (nl.mode == NonlinearityMode::rational) {
    const Sampled s = sample(U);
    const ComplexField sq = square_sum(s.grad);
    simd::kernels().dgl_pointwise(s.u.data(), sq.data(), g.data(), g.size());
  } else {
    g = g_taylor(transform_inverse(U), nl.taylor_order, false);
  }
  SpectralField G = transform_forward(g);
  dealias_inplace(G);
  G *= dgl_coefficients(params).nonlinear;
  return G;
}

SpectralField dgl_rhs(const SpectralField& U, const LlgParams& params, const Nonlinearity& nl) {
  SpectralField out = spectral_laplacian(U);
  out *= dgl_coefficients(params).linear;
  out += nonlinear_term(U, params, nl);
  return out;
}

SpectralField nonlinear_increment(const SpectralField& B, const SpectralField& W, const LlgParams& params) {
  B.check_same(W);
  const Sampled b = sample(B);
  const Sampled w = sample(W);
  const std::size_t n = B.size();

  // With a = b + w and A(x) = conj(x)/(1+|x|^2), S(x) = sum_j (d_j x)^2:
  //   G(a) - G(b) = A(a) dS + dA S(b)
  //   dS = sum_j d_j w (2 d_j b + d_j w)
  //   dA = conj(w)/(1+|a|^2) - conj(b) (2 Re(conj(b) w) + |w|^2) / ((1+|a|^2)(1+|b|^2))
  ComplexField ds(B.grid());
  for (std::size_t j = 0; j < b.grad.size(); ++j)
    for (std::size_t p = 0; p < n; ++p) ds[p] += w.grad[j][p] * (2.0 * b.grad[j][p] + w.grad[j][p]);
  const ComplexField sb = square_sum(b.grad);

  ComplexField g(B.grid());
  for (std::size_t p = 0; p < n; ++p) {
    const cplx bp = b.u[p], wp = w.u[p], ap = bp + wp;
    const double da = 1.0 + std::norm(ap), db = 1.0 + std::norm(bp);
    const double cross = 2.0 * (std::conj(bp) * wp).real() + std::norm(wp);
    const cplx dA = std::conj(wp) / da - std::conj(bp) * (cross / (da * db));
    g[p] = std::conj(ap) / da * ds[p] + dA * sb[p];
  }
  SpectralField G = transform_forward(g);
  dealias_inplace(G);
  G *= dgl_coefficients(params).nonlinear;
  return G;
}

}  // namespace llg::dgl
