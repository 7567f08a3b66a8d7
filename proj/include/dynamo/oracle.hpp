#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynamo/rng.hpp"
#include "dynamo/types.hpp"

namespace dynamo {

enum class Execution { Serial, Parallel };

/// Samples are generated in fixed-size chunks; chunk c of a campaign draws
/// from SampleStream(seed ^ tag, c) so that output is independent of the
/// worker count.
inline constexpr std::size_t kChunkSize = 1024;

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t count = 10000;
  HullParams params;
  ConeKind kind = ConeKind::NonStationary;
};

struct LaminatePair {
  Triple z1;
  Triple z2;
};

struct LaminateSample {
  Triple point;  // lambda z1 + (1 - lambda) z2
  double lambda = 0.0;
  LaminatePair pair;
};

struct PairStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
};

/// Safety cap on consecutive rejections while drawing one pair.
inline constexpr std::size_t kMaxPairRejections = 1'000'000;

// Single draws from a stream.

/// B uniform on the r-sphere, u uniform on the s-sphere, E = B x u.
Triple draw_K(SampleStream& rng, const HullParams& p);

/// One attempt at a cone-compatible pair of K-points. z1 is uniform on K and
/// B2 uniform on the r-sphere; u2 is then drawn from the exact solution set of
/// the cone condition on the s-sphere: a circle (plane u2 . (B1 x B2) =
/// (B1 - B2) . E1), or for StationaryIncompressible its intersection with the
/// plane u2 . (u1 x (B1 - B2)) = 0. Returns nullopt on rejection.
std::optional<LaminatePair> try_draw_lambda_pair(SampleStream& rng, const HullParams& p, ConeKind kind);

/// Repeats try_draw_lambda_pair until acceptance; throws std::runtime_error
/// after kMaxPairRejections consecutive rejections.
LaminatePair draw_lambda_pair(SampleStream& rng, const HullParams& p, ConeKind kind, PairStats* stats = nullptr);

LaminateSample draw_first_laminate(SampleStream& rng, const HullParams& p, ConeKind kind,
                                   PairStats* stats = nullptr);

/// A point of the closed-form hull: B in the r-ball, u in the s-ball (uniform
/// volume), E = B x u + delta D e with D the excess bound and e a unit vector
/// orthogonal to B (and to u for StationaryIncompressible). delta is uniform on
/// [0,1], except that every 100th sample index uses delta = 1.
Triple draw_hull_point(SampleStream& rng, const HullParams& p, ConeKind kind, std::size_t index);

// Whole streams.

std::vector<Triple> sample_K(const SampleConfig& cfg);
std::vector<LaminatePair> sample_lambda_pair(const SampleConfig& cfg, PairStats* stats = nullptr);
std::vector<LaminateSample> sample_first_laminate(const SampleConfig& cfg, PairStats* stats = nullptr);
std::vector<Triple> sample_hull(const SampleConfig& cfg);

/// Residual of the cone condition for a pair, scaled like in_wave_cone.
double pair_cone_residual(const LaminatePair& pair, ConeKind kind);

struct HullCheckOptions {
  double inner_slack = 1e-10;           // in_hull slack for first-laminate points
  double decomposition_bound = 1e-9;    // verify_decomposition residual bound
  std::size_t max_reported_failures = 100;
};

struct HullFailure {
  std::string stage;   // "inner" or "surjective"
  std::size_t index = 0;
  Triple point;
  std::string reason;
  double residual = 0.0;
};

struct HullCheckReport {
  std::uint64_t seed = 0;
  HullParams params;
  ConeKind kind = ConeKind::NonStationary;

  std::size_t inner_checked = 0;
  std::size_t inner_violations = 0;
  double inner_max_g1 = 0.0;           // max |B.E| over first-laminate points
  double inner_max_excess_ratio = 0.0; // max |E - B x u| / bound (<= 1 inside)

  std::size_t hull_checked = 0;
  std::size_t decomposition_failures = 0;
  double max_residual = 0.0;            // verify_decomposition
  double max_lambda_mu_residual = 0.0;
  double max_velocity_orthogonality = 0.0;  // stationary incompressible: |u.E|, |u.(Bbar x ubar)|

  PairStats pair_stats;
  std::size_t failure_count = 0;
  std::vector<HullFailure> failures;  // first max_reported_failures, ordered by (stage, index)

  std::size_t checked() const { return inner_checked + hull_checked; }
  bool ok() const { return failure_count == 0; }
};

/// Inner approximation (first-laminate samples lie in the closed-form hull)
/// and surjectivity (closed-form hull samples decompose) in one campaign.
HullCheckReport two_sided_hull_check(const SampleConfig& cfg, const Tolerances& tol, const HullCheckOptions& opts = {},
                                     Execution exec = Execution::Parallel);

}  // namespace dynamo
