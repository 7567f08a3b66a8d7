#pragma once

#include <span>
#include <vector>

#include "dynamo/laminate.hpp"
#include "dynamo/oracle.hpp"
#include "dynamo/types.hpp"

namespace dynamo {

/// Space-time frequency of a plane wave h(x . xi_x + t xi_t) (Bbar, ubar, Ebar).
struct WaveVector {
  Vec3 xi_x;
  double xi_t = 0.0;
};

/// Uniform grid: n points per axis with spacing h; `periods` is the number of
/// 2 pi windows covered by staircase averaging runs.
struct GridSpec {
  int n = 32;
  double h = 0.0;
  int periods = 1;

  /// n points covering [0, 2 pi) per axis.
  static GridSpec periodic(int n, int periods = 1);
  void validate() const;
};

/// True for the kinds whose plane waves depend on time.
constexpr bool is_time_dependent(ConeKind kind) {
  return kind == ConeKind::NonStationary || kind == ConeKind::NonStationaryIncompressible;
}

constexpr bool is_incompressible(ConeKind kind) {
  return kind == ConeKind::NonStationaryIncompressible || kind == ConeKind::StationaryIncompressible;
}

/// Frequency xi for which h(phi) dir solves the conservation laws
///   div B = 0,  d_t B + curl E = 0   (plus div u = 0 when incompressible)
/// for every profile h. Throws DynamoError(NotInCone) when dir admits none.
WaveVector wave_vector_for(const Triple& dir, ConeKind kind, const Tolerances& tol = {});

/// Largest algebraic plane-wave residual among Bbar . xi_x, xi_t Bbar + xi_x x Ebar
/// (and ubar . xi_x when incompressible), divided by 1 + |xi||dir|.
double plane_wave_condition_residual(const Triple& dir, const WaveVector& xi, ConeKind kind);

/// Max-norm residuals of centred-difference conservation laws for the
/// sampled plane wave sin(phi) dir.
struct ResidualReport {
  GridSpec grid;
  double gauss = 0.0;              // div B
  double faraday = 0.0;            // d_t B + curl E (curl E when stationary)
  double incompressibility = 0.0;  // div u, incompressible kinds only
  bool time_dependent = false;
  bool incompressible = false;
};

/// The wave vector is rescaled to |xi_x| = 1 (the conditions are homogeneous
/// in xi). Nodes are x = h (i, j, k), t = h l for 0 <= i, j, k, l < n, and the
/// stencil neighbours are sampled from the exact field, so no periodicity of
/// the wave is assumed.
ResidualReport grid_residual(const Triple& dir, const WaveVector& xi, const GridSpec& g, ConeKind kind,
                             Execution exec = Execution::Parallel);

struct ConvergenceReport {
  std::vector<ResidualReport> levels;
  // ratio[i] = residual(level i) / residual(level i+1); NaN where the coarse
  // residual is already at rounding level (exact discrete cancellation).
  std::vector<double> gauss_ratios;
  std::vector<double> faraday_ratios;
  std::vector<double> incompressibility_ratios;

  /// Every defined ratio is at least `min_ratio`.
  bool converges(double min_ratio) const;
};

/// Residuals below this are treated as exact cancellation when forming ratios.
inline constexpr double kResidualFloor = 1e-11;

ConvergenceReport residual_convergence(const Triple& dir, const WaveVector& xi, ConeKind kind,
                                       std::span<const int> grid_sizes, Execution exec = Execution::Parallel);

struct StaircaseResult {
  Triple average;         // domain average of the staircase field
  Triple target;          // lambda z1 + mu z2
  double z1_fraction = 0.0;   // volume fraction carrying z1
  double average_error = 0.0; // |average - target|
  double weak_error = 0.0;    // max over windows [0, y) of |integral (field - target)| / domain length
  int n_osc = 0;
  Vec3 normal;            // xi_x / |xi_x|: the jump planes are orthogonal to it
};

/// Piecewise-constant laminate taking z1 where frac(n_osc y / 2 pi) < lambda and
/// z2 elsewhere, y the coordinate along xi_x. The field is constant on the
/// planes normal to xi_x, so the domain reduces to g.n * g.periods cells of
/// width g.h along that coordinate; each cell carries its exact z1 volume
/// fraction, so no rounding bias builds up from one oscillation to the next.
/// weak_error equals lambda (1 - lambda) |z1 - z2| / (n_osc periods) up to the
/// cell width.
StaircaseResult staircase_average(const Decomposition& d, const WaveVector& xi, int n_osc, const GridSpec& g);

}  // namespace dynamo
