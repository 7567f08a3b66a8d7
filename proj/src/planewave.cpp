#include "dynamo/planewave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dynamo/core.hpp"

namespace dynamo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// B x u of the jump counts as nonzero for the stationary incompressible
// construction only above this sine of the angle between Bbar and ubar;
// below it the excess direction Ebar is used, which keeps E x xi exact.
constexpr double kMinJumpSine = 1e-3;

[[noreturn]] void throw_not_in_cone(ConeKind kind) {
  throw DynamoError(ErrorKind::NotInCone,
                    "wave_vector_for: direction is not in the wave cone for " + std::string(to_string(kind)));
}

WaveVector nonstationary_vector(const Triple& dir, bool incompressible, double tiny) {
  const Vec3& Bb = dir.B;
  const Vec3& ub = dir.u;
  const Vec3& Eb = dir.E;
  const bool b_zero = Bb.norm() <= tiny;
  const bool e_zero = Eb.norm() <= tiny;

  if (b_zero && e_zero) {
    return {incompressible ? any_orthogonal(ub) : Vec3{1, 0, 0}, 0.0};
  }
  if (e_zero) {
    return {incompressible ? any_orthogonal(Bb, ub) : any_orthogonal(Bb), 0.0};
  }
  if (b_zero) {
    // xi_x must be parallel to Ebar; with div u = 0 it must also be orthogonal to ubar.
    if (incompressible && std::abs(dot(ub, Eb)) > tiny * (1.0 + ub.norm() * Eb.norm())) {
      throw_not_in_cone(ConeKind::NonStationaryIncompressible);
    }
    return {Eb, 0.0};
  }

  // Bbar^perp = span{Ebar, Ebar x Bbar}; xi_x = a Ebar + c Ebar x Bbar, xi_t = -c |Ebar|^2.
  const Vec3 rotated = cross(Eb, Bb);
  double a = 1.0, c = 1.0;
  if (incompressible) {
    const double along = dot(ub, Eb);
    const double across = dot(ub, rotated);
    // a (u.E) + c (u.(E x B)) = 0, scaled to |xi_x| = 1.
    const double norm = std::hypot(across * Eb.norm(), along * rotated.norm());
    if (norm > tiny * (1.0 + ub.norm() * Eb.norm() * (1.0 + Bb.norm()))) {
      a = across / norm;
      c = -along / norm;
    }
  }
  return {a * Eb + c * rotated, -c * Eb.norm2()};
}

WaveVector stationary_vector(const Triple& dir, bool incompressible, double tiny) {
  const Vec3& Bb = dir.B;
  const Vec3& ub = dir.u;
  const Vec3& Eb = dir.E;
  if (incompressible) {
    const Vec3 bxu = cross(Bb, ub);
    if (bxu.norm() > kMinJumpSine * Bb.norm() * ub.norm() && bxu.norm() > tiny) return {bxu, 0.0};
    if (Eb.norm() > tiny) return {Eb, 0.0};
    return {any_orthogonal(Bb, ub), 0.0};
  }
  if (Eb.norm() > tiny) return {Eb, 0.0};
  return {any_orthogonal(Bb), 0.0};
}

}  // namespace

GridSpec GridSpec::periodic(int n, int periods) {
  GridSpec g{n, kTwoPi / n, periods};
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("GridSpec: n must be even and at least 4");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("GridSpec: h must be positive");
  if (periods < 1) throw std::invalid_argument("GridSpec: periods must be positive");
}

WaveVector wave_vector_for(const Triple& dir, ConeKind kind, const Tolerances& tol) {
  if (!dir.is_finite()) throw DynamoError(ErrorKind::InvalidArgument, "wave_vector_for: non-finite direction");
  if (!in_wave_cone(dir, kind, tol)) throw_not_in_cone(kind);
  const double tiny = 1e-14 * (1.0 + dir.norm());
  if (is_time_dependent(kind)) return nonstationary_vector(dir, is_incompressible(kind), tiny);
  return stationary_vector(dir, is_incompressible(kind), tiny);
}

double plane_wave_condition_residual(const Triple& dir, const WaveVector& xi, ConeKind kind) {
  const double scale = 1.0 + std::sqrt(xi.xi_x.norm2() + xi.xi_t * xi.xi_t) * dir.norm();
  double res = std::max(std::abs(dot(dir.B, xi.xi_x)), (xi.xi_t * dir.B + cross(xi.xi_x, dir.E)).norm());
  if (is_incompressible(kind)) res = std::max(res, std::abs(dot(dir.u, xi.xi_x)));
  return res / scale;
}

ResidualReport grid_residual(const Triple& dir, const WaveVector& xi, const GridSpec& g, ConeKind kind,
                             Execution exec) {
  g.validate();
  ResidualReport rep;
  rep.grid = g;
  rep.time_dependent = is_time_dependent(kind);
  rep.incompressible = is_incompressible(kind);

  const double k_norm = xi.xi_x.norm();
  if (k_norm == 0.0) throw DynamoError(ErrorKind::InvalidArgument, "grid_residual: xi_x must be nonzero");
  const Vec3 k = xi.xi_x / k_norm;
  const double w = rep.time_dependent ? xi.xi_t / k_norm : 0.0;
  const int n = g.n;
  const int nt = rep.time_dependent ? n : 1;
  const double h = g.h;
  const double inv2h = 0.5 / h;
  const Vec3 Bb = dir.B, ub = dir.u, Eb = dir.E;

  // Centred difference of sin(phi) along the axis whose frequency is `freq`.
  auto diff = [&](double phi, double freq) { return (std::sin(phi + h * freq) - std::sin(phi - h * freq)) * inv2h; };

  const auto n_slabs = static_cast<std::ptrdiff_t>(nt) * n;
  double gauss = 0.0, faraday = 0.0, incomp = 0.0;

  auto slab = [&](std::ptrdiff_t idx, double& ga, double& fa, double& in) {
    const int l = static_cast<int>(idx / n);
    const int i = static_cast<int>(idx % n);
    const double t = h * l;
    const double x = h * i;
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        const double phi = k.x * x + k.y * (h * j) + k.z * (h * m) + w * t;
        const Vec3 grad{diff(phi, k.x), diff(phi, k.y), diff(phi, k.z)};
        ga = std::max(ga, std::abs(dot(Bb, grad)));
        Vec3 far = cross(grad, Eb);
        if (rep.time_dependent) far += diff(phi, w) * Bb;
        fa = std::max(fa, far.norm());
        if (rep.incompressible) in = std::max(in, std::abs(dot(ub, grad)));
      }
    }
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) reduction(max : gauss, faraday, incomp)
    for (std::ptrdiff_t idx = 0; idx < n_slabs; ++idx) slab(idx, gauss, faraday, incomp);
  } else {
    for (std::ptrdiff_t idx = 0; idx < n_slabs; ++idx) slab(idx, gauss, faraday, incomp);
  }

  rep.gauss = gauss;
  rep.faraday = faraday;
  rep.incompressibility = incomp;
  return rep;
}

bool ConvergenceReport::converges(double min_ratio) const {
  auto ok = [&](const std::vector<double>& ratios) {
    return std::all_of(ratios.begin(), ratios.end(), [&](double r) { return std::isnan(r) || r >= min_ratio; });
  };
  return ok(gauss_ratios) && ok(faraday_ratios) && ok(incompressibility_ratios);
}

ConvergenceReport residual_convergence(const Triple& dir, const WaveVector& xi, ConeKind kind,
                                       std::span<const int> grid_sizes, Execution exec) {
  ConvergenceReport rep;
  for (int n : grid_sizes) rep.levels.push_back(grid_residual(dir, xi, GridSpec::periodic(n), kind, exec));
  auto ratio = [](double coarse, double fine) {
    return coarse <= kResidualFloor ? std::nan("") : coarse / std::max(fine, 1e-300);
  };
  for (std::size_t i = 0; i + 1 < rep.levels.size(); ++i) {
    const auto& a = rep.levels[i];
    const auto& b = rep.levels[i + 1];
    rep.gauss_ratios.push_back(ratio(a.gauss, b.gauss));
    rep.faraday_ratios.push_back(ratio(a.faraday, b.faraday));
    if (a.incompressible) rep.incompressibility_ratios.push_back(ratio(a.incompressibility, b.incompressibility));
  }
  return rep;
}

StaircaseResult staircase_average(const Decomposition& d, const WaveVector& xi, int n_osc, const GridSpec& g) {
  g.validate();
  if (n_osc < 1) throw std::invalid_argument("staircase_average: n_osc must be positive");
  const double k_norm = xi.xi_x.norm();
  if (k_norm == 0.0) throw DynamoError(ErrorKind::InvalidArgument, "staircase_average: xi_x must be nonzero");

  StaircaseResult res;
  res.n_osc = n_osc;
  res.normal = xi.xi_x / k_norm;
  res.target = d.combination();

  const auto cells = static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.periods);
  const double length = g.h * static_cast<double>(cells);
  const double period = kTwoPi / n_osc;
  // Measure of {t in [0, y) : z1 at t}.
  auto z1_measure = [&](double y) {
    const double c = y / period;
    const double whole = std::floor(c);
    return period * (whole * d.lambda + std::min(c - whole, d.lambda));
  };
  double worst = 0.0;  // max over cell boundaries y of |integral_0^y (indicator - lambda)|
  for (std::size_t i = 1; i <= cells; ++i) {
    const double y = g.h * static_cast<double>(i);
    worst = std::max(worst, std::abs(z1_measure(y) - d.lambda * y));
  }

  res.z1_fraction = z1_measure(length) / length;
  res.average = res.z1_fraction * d.z1 + (1.0 - res.z1_fraction) * d.z2;
  const Triple err = res.average - res.target;
  res.average_error = err.norm();
  res.weak_error = worst * (d.z1 - d.z2).norm() / length;
  return res;
}

}  // namespace dynamo
