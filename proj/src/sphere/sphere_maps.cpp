#include "llg/sphere/sphere_maps.hpp"

#include <algorithm>
#include <cmath>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::sphere {
namespace {

constexpr double kPoleGuard = 0.1;
constexpr double kUnitTolerance = 1e-6;
constexpr double kDegenerate = 1e-8;

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 rotation_matrix(const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
  const double x = axis[0], y = axis[1], z = axis[2];
  return {{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
           {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
           {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

/// Rotation taking `from` (unit) to `to` (unit).
Mat3 aligning_rotation(const Vec3& from, const Vec3& to) {
  const Vec3 ax{from[1] * to[2] - from[2] * to[1], from[2] * to[0] - from[0] * to[2],
                from[0] * to[1] - from[1] * to[0]};
  const double sn = std::sqrt(ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2]);
  const double cs = from[0] * to[0] + from[1] * to[1] + from[2] * to[2];
  if (sn < 1e-15) {
    if (cs > 0) return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    // antipodal: half turn about any axis orthogonal to `from`
    const Vec3 ortho = std::abs(from[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 a{from[1] * ortho[2] - from[2] * ortho[1], from[2] * ortho[0] - from[0] * ortho[2],
           from[0] * ortho[1] - from[1] * ortho[0]};
    const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    for (double& v : a) v /= na;
    return rotation_matrix(a, std::numbers::pi);
  }
  return rotation_matrix({ax[0] / sn, ax[1] / sn, ax[2] / sn}, std::atan2(sn, cs));
}

VectorField3 apply_matrix(const Mat3& m, const VectorField3& v) {
  VectorField3 out = make_vector_field(v[0].grid());
  for (std::size_t p = 0; p < v[0].size(); ++p) {
    const double x = v[0][p], y = v[1][p], z = v[2][p];
    for (int r = 0; r < 3; ++r) out[r][p] = m[r][0] * x + m[r][1] * y + m[r][2] * z;
  }
  return out;
}

bool is_north(const Vec3& q) { return q[0] == 0.0 && q[1] == 0.0 && q[2] == 1.0; }

void check_grids(const VectorField3& u, const VectorField3& v) {
  for (int c = 0; c < 3; ++c) {
    u[c].check_same(u[0]);
    v[c].check_same(u[0]);
  }
}

RealField dealiased(const RealField& f) { return transform_inverse_real(dealias(transform_forward(f))); }

}  // namespace

VectorField3 make_vector_field(const Grid& grid) { return {RealField(grid), RealField(grid), RealField(grid)}; }

VectorField3 constant_vector_field(const Grid& grid, const Vec3& v) {
  VectorField3 out = make_vector_field(grid);
  for (int c = 0; c < 3; ++c)
    for (double& x : out[c].values()) x = v[c];
  return out;
}

double SphereField::unit_norm_defect() const {
  double worst = 0.0;
  for (std::size_t p = 0; p < s[0].size(); ++p) {
    const double n = std::sqrt(s[0][p] * s[0][p] + s[1][p] * s[1][p] + s[2][p] * s[2][p]);
    worst = std::max(worst, std::abs(n - 1.0));
  }
  return worst;
}

VectorField3 cross(const VectorField3& u, const VectorField3& v) {
  check_grids(u, v);
  VectorField3 out = make_vector_field(u[0].grid());
  const double* pu[3] = {u[0].data(), u[1].data(), u[2].data()};
  const double* pv[3] = {v[0].data(), v[1].data(), v[2].data()};
  double* po[3] = {out[0].data(), out[1].data(), out[2].data()};
  simd::kernels().cross3(pu, pv, po, u[0].size());
  return out;
}

RealField dot(const VectorField3& u, const VectorField3& v) {
  check_grids(u, v);
  RealField out(u[0].grid());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = u[0][p] * v[0][p] + u[1][p] * v[1][p] + u[2][p] * v[2][p];
  return out;
}

VectorField3 llg_rhs(const SphereField& s, const LlgParams& params) {
  if (s.unit_norm_defect() > kUnitTolerance)
    throw DomainError("llg_rhs needs a unit field; renormalize first");
  return llg_field(s.s, params);
}

VectorField3 llg_field(const VectorField3& s, const LlgParams& params) {
  VectorField3 lap = make_vector_field(s[0].grid());
  for (int c = 0; c < 3; ++c) lap[c] = laplacian(s[c]);

  VectorField3 sxl = cross(s, lap);
  for (auto& c : sxl) c = dealiased(c);

  VectorField3 rhs = make_vector_field(s[0].grid());
  for (int c = 0; c < 3; ++c) {
    rhs[c] = sxl[c];
    rhs[c] *= params.a;
  }
  if (params.epsilon != 0.0) {
    VectorField3 sxsxl = cross(s, sxl);
    for (int c = 0; c < 3; ++c) {
      RealField d = dealiased(sxsxl[c]);
      d *= params.epsilon;
      rhs[c] -= d;
    }
  }
  // Tangent projection v - (v.s) s / |s|^2.
  const RealField normal = dot(rhs, s);
  const RealField norm2 = dot(s, s);
  for (int c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < rhs[c].size(); ++p) rhs[c][p] -= normal[p] / norm2[p] * s[c][p];
  return rhs;
}

ComplexField stereographic(const SphereField& sf) {
  const VectorField3 s = is_north(sf.base_point) ? sf.s : apply_matrix(aligning_rotation(sf.base_point, {0, 0, 1}), sf.s);
  ComplexField u(sf.grid());
  for (std::size_t p = 0; p < u.size(); ++p) {
    const double den = 1.0 + s[2][p];
    if (!(den >= kPoleGuard))
      throw SingularityError("stereographic projection too close to the pole (1 + s3 < 0.1)");
    u[p] = cplx(s[0][p] / den, s[1][p] / den);
  }
  return u;
}

SphereField inverse_stereographic(const ComplexField& u, const Vec3& base_point) {
  SphereField out{make_vector_field(u.grid()), base_point};
  for (std::size_t p = 0; p < u.size(); ++p) {
    const double r2 = std::norm(u[p]);
    const double den = 1.0 + r2;
    out.s[0][p] = 2.0 * u[p].real() / den;
    out.s[1][p] = 2.0 * u[p].imag() / den;
    out.s[2][p] = (1.0 - r2) / den;
  }
  if (!is_north(base_point)) out.s = apply_matrix(aligning_rotation({0, 0, 1}, base_point), out.s);
  return out;
}

SphereField renormalize(SphereField sf) {
  for (std::size_t p = 0; p < sf.s[0].size(); ++p) {
    const double n = std::sqrt(sf.s[0][p] * sf.s[0][p] + sf.s[1][p] * sf.s[1][p] + sf.s[2][p] * sf.s[2][p]);
    if (!(n >= kDegenerate)) throw DegenerateFieldError("cannot renormalize a field with |s| < 1e-8");
    for (int c = 0; c < 3; ++c) sf.s[c][p] /= n;
  }
  return sf;
}

double dirichlet_energy(const SphereField& s) {
  double e = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const RealField& d : gradient(s.s[c]))
      for (double v : d.values()) e += v * v;
  return e * s.grid().cell_volume();
}

VectorField3 rotate(const VectorField3& v, const Vec3& axis, double angle) {
  return apply_matrix(rotation_matrix(axis, angle), v);
}

double sup_distance(const VectorField3& a, const VectorField3& b) {
  check_grids(a, b);
  double m = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < a[c].size(); ++p) m = std::max(m, std::abs(a[c][p] - b[c][p]));
  return m;
}

}  // namespace llg::sphere
