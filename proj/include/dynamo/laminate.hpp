#pragma once

#include <vector>

#include "dynamo/types.hpp"

namespace dynamo {

/// A first-laminate witness: target = lambda z1 + (1 - lambda) z2 with
/// z1, z2 in K_{r,s} and z1 - z2 in the wave cone.
struct Decomposition {
  double lambda = 0.5;
  Triple z1;
  Triple z2;

  double mu() const { return 1.0 - lambda; }
  Triple combination() const { return lambda * z1 + mu() * z2; }
};

/// Plane in which the jump directions of the field and velocity are searched.
enum class WorkingPlane {
  ZeroField,               // B = 0: velocity jump chosen orthogonal to u and the excess
  FieldAndRotatedExcess,   // span{B, B x Ebar}
  FieldAndVelocity,        // span{B, u}; stationary incompressible with B x u != 0
};

std::string_view to_string(WorkingPlane plane);

/// Jump directions (Bbar, ubar) solving the first-laminate conditions for a
/// strictly interior hull point with E != B x u.
struct LaminateConditions {
  Vec3 Ebar;      // (E - B x u) / sqrt((r^2 - |B|^2)(s^2 - |u|^2))
  Vec3 Bbar;
  Vec3 ubar;
  double alpha_B = 0.0;  // angle from B to Bbar in [0, 2 pi); 0 when B = 0
  double alpha_u = 0.0;  // angle between u and ubar in [0, pi]; 0 when u = 0
  WorkingPlane plane = WorkingPlane::FieldAndRotatedExcess;
  double root_value = 0.0;  // balance function at the returned angle
  int iterations = 0;
};

/// Residuals of the laminate conditions for a jump pair (Bbar, ubar) at z.
/// All entries are dimensionless.
struct ConditionResiduals {
  double excess_form = 0.0;        // E = B x u + D Bbar x ubar / (|Bbar||ubar|)
  double amplitude_ratio = 0.0;    // |Bbar|^2 (s^2-|u|^2) = (r^2-|B|^2) |ubar|^2
  double amplitude_angle = 0.0;    // |Bbar|^2 = 4 (r^2 - |B|^2 sin^2 alpha_B)
  double cosine_balance = 0.0;     // |B| cos alpha_B = rho |u| cos alpha_u
  double field_orthogonality = 0.0;     // B . (Bbar x ubar) = 0
  double velocity_orthogonality = 0.0;  // u . (Bbar x ubar) = 0 (stationary incompressible only)

  double max() const;
};

ConditionResiduals check_laminate_conditions(const Triple& z, const Vec3& Bbar, const Vec3& ubar, const HullParams& p,
                                             ConeKind kind);

/// Decomposition of an Ohm's-law point (B, u, B x u) with |B| <= r, |u| <= s
/// into two K-points with lambda = 1/2 and parallel jumps orthogonal to B and u.
Decomposition decompose_exact_ohm(const Vec3& B, const Vec3& u, const HullParams& p, ConeKind kind,
                                  const Tolerances& tol = {});

/// The balance function G(alpha) = |B| cos alpha_B - rho |u| cos alpha_u
/// along the one-parameter family of unit jump directions in the working
/// plane, where the velocity direction is the field direction rotated by
/// arcsin|Ebar| about Ebar/|Ebar|. G(pi/2) = -G(3pi/2).
class BalanceFunction {
 public:
  /// Requires a strictly interior hull point with E != B x u.
  BalanceFunction(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol);

  double operator()(double alpha) const;
  Vec3 field_direction(double alpha) const;
  Vec3 velocity_direction(double alpha) const;

  WorkingPlane plane() const { return plane_; }
  const Vec3& normalized_excess() const { return ebar_; }
  double amplitude_ratio() const { return rho_; }

  /// G sampled at `count` evenly spaced angles over [pi/2, 3pi/2].
  std::vector<double> scan(int count) const;

 private:
  Triple z_;
  Vec3 ebar_;
  Vec3 axis_;   // Ebar / |Ebar|
  Vec3 e1_, e2_;
  double theta_ = 0.0;
  double rho_ = 1.0;
  WorkingPlane plane_ = WorkingPlane::FieldAndRotatedExcess;
};

LaminateConditions solve_laminate_conditions(const Triple& z, const HullParams& p, ConeKind kind,
                                             const Tolerances& tol = {});

/// Splits any hull point into a first-laminate pair. Throws NotInHullError
/// (carrying the separating function) for points outside the hull.
Decomposition decompose(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol = {});

struct VerificationReport {
  bool passed = false;
  double endpoint_residual = 0.0;        // z1, z2 in K_{r,s}
  double cone_residual = 0.0;            // z1 - z2 in the cone of `kind`
  double lambda_residual = 0.0;          // distance of lambda from [0,1]
  double reconstruction_residual = 0.0;  // lambda z1 + mu z2 - target
  double max_residual = 0.0;
};

/// Checks a decomposition against its target; failures are reported, not thrown.
/// Passes iff max_residual <= tol.eps_mem.
VerificationReport verify_decomposition(const Decomposition& d, const Triple& target, const HullParams& p,
                                        ConeKind kind, const Tolerances& tol = {});

/// |lambda mu |B1 - B2| |u1 - u2| - sqrt((r^2-|B|^2)(s^2-|u|^2))| / max(r,s,1)^2.
double lambda_mu_residual(const Decomposition& d, const Triple& target, const HullParams& p);

}  // namespace dynamo
