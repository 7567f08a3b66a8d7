#include "dynamo/core.hpp"

#include <algorithm>
#include <cmath>

namespace dynamo {

namespace {

bool orthogonal_within(const Vec3& a, const Vec3& b, double eps) {
  return std::abs(dot(a, b)) <= eps * (1.0 + a.norm() * b.norm());
}

}  // namespace

bool in_constraint_set(const Triple& z, const HullParams& p, const Tolerances& tol) {
  const double r = p.r(), s = p.s();
  return std::abs(z.B.norm() - r) <= tol.eps_mem * r && std::abs(z.u.norm() - s) <= tol.eps_mem * s &&
         distance(z.E, cross(z.B, z.u)) <= tol.eps_mem * r * s;
}

bool in_wave_cone(const Triple& z, ConeKind kind, const Tolerances& tol) {
  if (!orthogonal_within(z.B, z.E, tol.eps_mem)) return false;
  if (has_velocity_constraint(kind) && !orthogonal_within(z.u, z.E, tol.eps_mem)) return false;
  return true;
}

double eval_g1(const Triple& z) { return dot(z.B, z.E); }

double eval_g3(const Triple& z) { return dot(z.u, z.E); }

double eval_g2(const Triple& z, const HullParams& p) {
  const double a = z.B.norm2() - p.r() * p.r();
  const double b = z.u.norm2() - p.s() * p.s();
  const double c = distance(cross(z.B, z.u), z.E);
  // alpha = (1 + t)/2 turns the bracket into (a+b)/2 + t (a-b)/2 + sqrt(1-t^2) c,
  // whose maximum over t in [-1,1] is attained at t = (a-b)/2 / hypot((a-b)/2, c).
  return 0.5 * (a + b) + std::hypot(0.5 * (a - b), c);
}

double excess_bound(const Vec3& B, const Vec3& u, const HullParams& p) {
  const double gb = std::max(0.0, p.r() * p.r() - B.norm2());
  const double gu = std::max(0.0, p.s() * p.s() - u.norm2());
  return std::sqrt(gb * gu);
}

bool in_hull(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) {
  const double scale = p.scale();
  const double eps = tol.eps_mem;
  if (z.B.norm() > p.r() + eps * scale) return false;
  if (z.u.norm() > p.s() + eps * scale) return false;
  if (!orthogonal_within(z.B, z.E, eps)) return false;
  if (has_velocity_constraint(kind) && !orthogonal_within(z.u, z.E, eps)) return false;
  const double excess = distance(z.E, cross(z.B, z.u));
  return excess <= excess_bound(z.B, z.u, p) + eps * scale * scale;
}

bool in_hull_by_separators(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) {
  const double eps = tol.eps_mem;
  const double scale = p.scale();
  if (std::abs(eval_g1(z)) > eps * (1.0 + z.B.norm() * z.E.norm())) return false;
  if (has_velocity_constraint(kind) && std::abs(eval_g3(z)) > eps * (1.0 + z.u.norm() * z.E.norm())) {
    return false;
  }
  return eval_g2(z, p) <= eps * scale * scale;
}

SeparationWitness separation_witness(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) {
  SeparationWitness w;
  w.g1 = eval_g1(z);
  w.g2 = eval_g2(z, p);
  w.g3 = eval_g3(z);
  if (in_hull(z, p, kind, tol)) return w;

  const double eps = tol.eps_mem;
  if (std::abs(w.g1) > eps * (1.0 + z.B.norm() * z.E.norm())) {
    w.separator = Separator::G1;
    w.value = w.g1;
  } else if (has_velocity_constraint(kind) && std::abs(w.g3) > eps * (1.0 + z.u.norm() * z.E.norm())) {
    w.separator = Separator::G3;
    w.value = w.g3;
  } else {
    w.separator = Separator::G2;
    w.value = w.g2;
  }
  return w;
}

}  // namespace dynamo
