#pragma once

#include "dynamo/types.hpp"

namespace dynamo {

// Constraint set K_{r,s} = {(B,u,E) : E = B x u, |B| = r, |u| = s}.
bool in_constraint_set(const Triple& z, const HullParams& p, const Tolerances& tol = {});

/// Wave cone membership. Every kind except StationaryIncompressible uses
/// {B.E = 0}; StationaryIncompressible additionally requires u.E = 0.
bool in_wave_cone(const Triple& z, ConeKind kind, const Tolerances& tol = {});

/// B . E; affine along every wave-cone line and zero on the hull.
double eval_g1(const Triple& z);

/// max over alpha in [0,1] of
///   alpha (|B|^2 - r^2) + (1 - alpha)(|u|^2 - s^2) + 2 sqrt(alpha (1 - alpha)) |B x u - E|,
/// evaluated in closed form. Convex, zero on K_{r,s}, nonpositive on the hull.
double eval_g2(const Triple& z, const HullParams& p);

/// u . E; the extra affine separator of the stationary incompressible cone.
double eval_g3(const Triple& z);

/// Closed-form hull membership through the explicit inequalities
///   |B| <= r, |u| <= s, B.E = 0, |E - B x u|^2 <= (r^2 - |B|^2)(s^2 - |u|^2)
/// plus u.E = 0 for StationaryIncompressible.
bool in_hull(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol = {});

/// Hull membership through the separating functions: G1 = 0, G2 <= 0
/// (and G3 = 0 where applicable). Agrees with in_hull away from the
/// tolerance band around the boundary.
bool in_hull_by_separators(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol = {});

/// Names the separating function that excludes z, checked in the order
/// G1, G3, G2. Separator::None when z is in the hull.
SeparationWitness separation_witness(const Triple& z, const HullParams& p, ConeKind kind,
                                     const Tolerances& tol = {});

/// sqrt((r^2 - |B|^2)(s^2 - |u|^2)) with negative factors clamped to zero:
/// the largest admissible |E - B x u|.
double excess_bound(const Vec3& B, const Vec3& u, const HullParams& p);

}  // namespace dynamo
