#include "dynamo/laminate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "dynamo/bisection.hpp"
#include "dynamo/core.hpp"

namespace dynamo {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void throw_not_in_hull(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol,
                                    const char* context) {
  const SeparationWitness w = separation_witness(z, p, kind, tol);
  throw NotInHullError(std::string(context) + ": point is outside the hull (separator " +
                           std::string(to_string(w.separator)) + ")",
                       w);
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::acos(std::clamp(dot(a, b) / (na * nb), -1.0, 1.0));
}

}  // namespace

std::string_view to_string(WorkingPlane plane) {
  switch (plane) {
    case WorkingPlane::ZeroField: return "zero-field";
    case WorkingPlane::FieldAndRotatedExcess: return "span(B, B x Ebar)";
    case WorkingPlane::FieldAndVelocity: return "span(B, u)";
  }
  return "unknown";
}

double ConditionResiduals::max() const {
  return std::max({excess_form, amplitude_ratio, amplitude_angle, cosine_balance, field_orthogonality,
                   velocity_orthogonality});
}

ConditionResiduals check_laminate_conditions(const Triple& z, const Vec3& Bbar, const Vec3& ubar, const HullParams& p,
                                             ConeKind kind) {
  const double r2 = p.r() * p.r(), s2 = p.s() * p.s();
  const double gb = r2 - z.B.norm2();
  const double gu = s2 - z.u.norm2();
  const double scale2 = p.scale() * p.scale();
  const double nb = Bbar.norm(), nu = ubar.norm();
  const Vec3 jump_cross = cross(Bbar, ubar);

  ConditionResiduals res;
  const Vec3 predicted = cross(z.B, z.u) + (std::sqrt(std::max(0.0, gb * gu)) / (nb * nu)) * jump_cross;
  res.excess_form = distance(z.E, predicted) / scale2;
  res.amplitude_ratio = std::abs(nb * nb * gu - gb * nu * nu) / (nb * nb * gu + gb * nu * nu);
  // |B|^2 sin^2 alpha_B = |B|^2 - (B . Bbar)^2 / |Bbar|^2, which is zero for B = 0.
  const double proj = dot(z.B, Bbar) / nb;
  const double b_sin2 = std::max(0.0, z.B.norm2() - proj * proj);
  res.amplitude_angle = std::abs(nb * nb - 4.0 * (r2 - b_sin2)) / (4.0 * r2);
  const double rho = std::sqrt(gb / gu);
  res.cosine_balance = std::abs(proj - rho * dot(z.u, ubar) / nu) / (p.scale() * (1.0 + rho));
  res.field_orthogonality = std::abs(dot(z.B, jump_cross)) / (1.0 + z.B.norm() * nb * nu);
  if (has_velocity_constraint(kind)) {
    res.velocity_orthogonality = std::abs(dot(z.u, jump_cross)) / (1.0 + z.u.norm() * nb * nu);
  }
  return res;
}

Decomposition decompose_exact_ohm(const Vec3& B, const Vec3& u, const HullParams& p, ConeKind kind,
                                  const Tolerances& tol) {
  const double slack = tol.eps_mem * p.scale();
  if (B.norm() > p.r() + slack || u.norm() > p.s() + slack) {
    throw_not_in_hull(ohm_point(B, u), p, kind, tol, "decompose_exact_ohm");
  }
  const Vec3 e = any_orthogonal(B, u);
  const Vec3 Bbar = std::sqrt(std::max(0.0, p.r() * p.r() - B.norm2())) * e;
  const Vec3 ubar = std::sqrt(std::max(0.0, p.s() * p.s() - u.norm2())) * e;
  return {0.5, ohm_point(B + Bbar, u + ubar), ohm_point(B - Bbar, u - ubar)};
}

BalanceFunction::BalanceFunction(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) : z_(z) {
  const double gb = p.r() * p.r() - z.B.norm2();
  const double gu = p.s() * p.s() - z.u.norm2();
  if (!(gb > 0.0 && gu > 0.0)) {
    throw_not_in_hull(z, p, kind, tol, "BalanceFunction: boundary point with E != B x u");
  }
  const Vec3 excess = z.E - cross(z.B, z.u);
  const double c = excess.norm();
  const double bound = std::sqrt(gb * gu);
  ebar_ = excess / bound;
  axis_ = excess / c;
  theta_ = std::asin(std::min(1.0, c / bound));
  rho_ = std::sqrt(gb / gu);

  const Vec3 b_perp = z.B - dot(z.B, axis_) * axis_;
  if (b_perp.norm() <= tol.eps_root * p.r()) {
    plane_ = WorkingPlane::ZeroField;
    // Velocity jump orthogonal to u and to the excess; the field jump is that
    // direction rotated back by theta.
    e1_ = any_orthogonal(z.u, axis_);
    if (std::abs(dot(e1_, axis_)) > 0.5) e1_ = any_orthogonal(axis_);
    e1_ = normalized(e1_ - dot(e1_, axis_) * axis_);
    e2_ = cross(axis_, e1_);
    return;
  }
  e1_ = normalized(b_perp);
  e2_ = cross(axis_, e1_);
  // B . Ebar = 0 and both nonzero, so {B, Ebar, B x Ebar} is an orthogonal frame.
  assert(std::abs(dot(e1_, e2_)) < 1e-12);
  const bool stationary_plane =
      has_velocity_constraint(kind) && cross(z.B, z.u).norm() > tol.eps_root * p.r() * p.s();
  plane_ = stationary_plane ? WorkingPlane::FieldAndVelocity : WorkingPlane::FieldAndRotatedExcess;
}

Vec3 BalanceFunction::field_direction(double alpha) const {
  if (plane_ == WorkingPlane::ZeroField) return std::cos(theta_) * e1_ - std::sin(theta_) * e2_;
  return std::cos(alpha) * e1_ + std::sin(alpha) * e2_;
}

Vec3 BalanceFunction::velocity_direction(double alpha) const {
  if (plane_ == WorkingPlane::ZeroField) return e1_;
  return std::cos(alpha + theta_) * e1_ + std::sin(alpha + theta_) * e2_;
}

double BalanceFunction::operator()(double alpha) const {
  return dot(z_.B, field_direction(alpha)) - rho_ * dot(z_.u, velocity_direction(alpha));
}

std::vector<double> BalanceFunction::scan(int count) const {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double alpha = 0.5 * kPi + kPi * (count > 1 ? static_cast<double>(i) / (count - 1) : 0.0);
    values.push_back((*this)(alpha));
  }
  return values;
}

LaminateConditions solve_laminate_conditions(const Triple& z, const HullParams& p, ConeKind kind,
                                             const Tolerances& tol) {
  if (!in_hull(z, p, kind, tol)) throw_not_in_hull(z, p, kind, tol, "solve_laminate_conditions");
  const double scale2 = p.scale() * p.scale();
  if (distance(z.E, cross(z.B, z.u)) <= tol.eps_root * scale2) {
    throw DynamoError(ErrorKind::DegenerateCall,
                      "solve_laminate_conditions: E = B x u, use decompose_exact_ohm instead");
  }

  const BalanceFunction balance(z, p, kind, tol);
  LaminateConditions out;
  out.Ebar = balance.normalized_excess();
  out.plane = balance.plane();

  double alpha = 0.0;
  if (balance.plane() != WorkingPlane::ZeroField) {
    const BisectionResult root = bisect(balance, 0.5 * kPi, 1.5 * kPi, tol.eps_root);
    alpha = root.root;
    out.root_value = root.value;
    out.iterations = root.iterations;
    out.alpha_B = alpha;
  }

  const Vec3 b_hat = balance.field_direction(alpha);
  const Vec3 u_hat = balance.velocity_direction(alpha);
  const double b_proj = dot(z.B, b_hat);
  const double bbar_norm = 2.0 * std::sqrt(p.r() * p.r() - z.B.norm2() + b_proj * b_proj);
  out.Bbar = bbar_norm * b_hat;
  out.ubar = (bbar_norm / balance.amplitude_ratio()) * u_hat;
  out.alpha_u = angle_between(z.u, out.ubar);
  return out;
}

Decomposition decompose(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) {
  if (!in_hull(z, p, kind, tol)) throw_not_in_hull(z, p, kind, tol, "decompose");

  const double gb = p.r() * p.r() - z.B.norm2();
  const double gu = p.s() * p.s() - z.u.norm2();
  const double excess = distance(z.E, cross(z.B, z.u));
  if (excess <= tol.eps_root * p.scale() * p.scale() || gb <= 0.0 || gu <= 0.0) {
    return decompose_exact_ohm(z.B, z.u, p, kind, tol);
  }

  const LaminateConditions c = solve_laminate_conditions(z, p, kind, tol);
  const double lambda = std::clamp(0.5 + dot(z.B, c.Bbar) / c.Bbar.norm2(), 0.0, 1.0);
  const double mu = 1.0 - lambda;
  return {lambda, ohm_point(z.B + mu * c.Bbar, z.u + mu * c.ubar), ohm_point(z.B - lambda * c.Bbar, z.u - lambda * c.ubar)};
}

VerificationReport verify_decomposition(const Decomposition& d, const Triple& target, const HullParams& p,
                                        ConeKind kind, const Tolerances& tol) {
  const double r = p.r(), s = p.s();
  auto endpoint = [&](const Triple& e) {
    return std::max({std::abs(e.B.norm() - r) / r, std::abs(e.u.norm() - s) / s,
                     distance(e.E, cross(e.B, e.u)) / (r * s)});
  };

  VerificationReport rep;
  rep.endpoint_residual = std::max(endpoint(d.z1), endpoint(d.z2));

  const Triple jump = d.z1 - d.z2;
  rep.cone_residual = std::abs(dot(jump.B, jump.E)) / (1.0 + jump.B.norm() * jump.E.norm());
  if (has_velocity_constraint(kind)) {
    rep.cone_residual =
        std::max(rep.cone_residual, std::abs(dot(jump.u, jump.E)) / (1.0 + jump.u.norm() * jump.E.norm()));
  }

  rep.lambda_residual = std::max({0.0, -d.lambda, d.lambda - 1.0});
  if (!std::isfinite(d.lambda)) rep.lambda_residual = INFINITY;

  const Triple mix = d.combination();
  rep.reconstruction_residual = std::max(
      {distance(mix.B, target.B) / r, distance(mix.u, target.u) / s, distance(mix.E, target.E) / (r * s)});

  rep.max_residual =
      std::max({rep.endpoint_residual, rep.cone_residual, rep.lambda_residual, rep.reconstruction_residual});
  rep.passed = std::isfinite(rep.max_residual) && rep.max_residual <= tol.eps_mem;
  return rep;
}

double lambda_mu_residual(const Decomposition& d, const Triple& target, const HullParams& p) {
  const Triple jump = d.z1 - d.z2;
  const double lhs = d.lambda * d.mu() * jump.B.norm() * jump.u.norm();
  const double rhs = excess_bound(target.B, target.u, p);
  return std::abs(lhs - rhs) / (p.scale() * p.scale());
}

}  // namespace dynamo
