#pragma once

#include <array>

#include "llg/core/field.hpp"
#include "llg/core/params.hpp"
#include "llg/core/trajectory.hpp"

namespace llg::sphere {

using Vec3 = std::array<double, 3>;

/// Three real component fields on a common grid.
using VectorField3 = std::array<RealField, 3>;

VectorField3 make_vector_field(const Grid& grid);
/// Pointwise constant vector.
VectorField3 constant_vector_field(const Grid& grid, const Vec3& v);

/// Map from the torus to the unit sphere, with base point Q (the value s
/// tends to in the small-data regime).
struct SphereField {
  VectorField3 s;
  Vec3 base_point{0.0, 0.0, 1.0};

  const Grid& grid() const { return s[0].grid(); }
  /// max_x | |s(x)| - 1 |
  double unit_norm_defect() const;
};

using SphereTrajectory = BasicTrajectory<SphereField>;

/// Pointwise u x v. Throws SizeMismatchError on grid mismatch.
VectorField3 cross(const VectorField3& u, const VectorField3& v);
/// Pointwise u . v.
RealField dot(const VectorField3& u, const VectorField3& v);

/// a s x Ds - eps s x (s x Ds). Ds is spectral per component; each product
/// is formed pointwise and truncated by the 2/3 rule, and the result is
/// projected onto the tangent plane of s to remove what the truncation left
/// in the normal direction. Throws DomainError if | |s| - 1 | > 1e-6.
VectorField3 llg_rhs(const SphereField& s, const LlgParams& params);

/// Same vector field for a not necessarily unit s (integrator stages): no
/// unit check, and the tangent projection divides by |s|^2.
VectorField3 llg_field(const VectorField3& s, const LlgParams& params);

/// u = (s1 + i s2) / (1 + s3) after rotating the base point to (0, 0, 1).
/// Throws SingularityError if 1 + s3 < 0.1 anywhere.
ComplexField stereographic(const SphereField& s);

/// s = ((u + conj u), -i (u - conj u), 1 - |u|^2) / (1 + |u|^2), rotated so
/// that (0, 0, 1) lands on `base_point`.
SphereField inverse_stereographic(const ComplexField& u, const Vec3& base_point = {0.0, 0.0, 1.0});

/// s / |s| pointwise. Throws DegenerateFieldError if |s| < 1e-8 somewhere.
SphereField renormalize(SphereField s);

/// sum over grid of |grad s|^2 dV (all components, all axes).
double dirichlet_energy(const SphereField& s);

/// Rotation by `angle` about `axis` (unit vector), applied pointwise.
VectorField3 rotate(const VectorField3& v, const Vec3& axis, double angle);

/// Pointwise max of |a - b| over all components.
double sup_distance(const VectorField3& a, const VectorField3& b);

}  // namespace llg::sphere
