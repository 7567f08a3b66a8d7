#include "dynamo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dynamo/core.hpp"
#include "dynamo/laminate.hpp"

namespace dynamo {

namespace {

// Stream tags keep the different campaigns of one seed independent.
constexpr std::uint64_t kTagK = 0x4b5f73616d706c65ULL;
constexpr std::uint64_t kTagPair = 0x6c616d5f70616972ULL;
constexpr std::uint64_t kTagHull = 0x68756c6c5f707473ULL;

// Pairs with |B1 x B2| below this fraction of r^2 are rejected, as are
// stationary-incompressible constraint planes meeting at a sine below the
// second threshold.
constexpr double kMinFieldCross = 1e-9;
constexpr double kMinPlaneSine = 1e-4;

std::size_t chunk_count(std::size_t count) { return (count + kChunkSize - 1) / kChunkSize; }

template <class Draw>
auto collect(const SampleConfig& cfg, std::uint64_t tag, Draw draw) {
  using T = decltype(draw(std::declval<SampleStream&>(), std::size_t{}));
  std::vector<T> out;
  out.reserve(cfg.count);
  for (std::size_t c = 0; c < chunk_count(cfg.count); ++c) {
    SampleStream rng(cfg.seed ^ tag, c);
    const std::size_t end = std::min(cfg.count, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) out.push_back(draw(rng, i));
  }
  return out;
}

Vec3 random_orthogonal(SampleStream& rng, const Vec3& axis) {
  for (;;) {
    const Vec3 v = rng.unit_vector();
    const double a2 = axis.norm2();
    const Vec3 w = a2 > 0.0 ? v - (dot(v, axis) / a2) * axis : v;
    const double n = w.norm();
    if (n > 1e-3) return w / n;
  }
}

}  // namespace

Triple draw_K(SampleStream& rng, const HullParams& p) {
  const Vec3 B = p.r() * rng.unit_vector();
  const Vec3 u = p.s() * rng.unit_vector();
  return ohm_point(B, u);
}

std::optional<LaminatePair> try_draw_lambda_pair(SampleStream& rng, const HullParams& p, ConeKind kind) {
  const Triple z1 = draw_K(rng, p);
  const Vec3 B2 = p.r() * rng.unit_vector();

  // (B1 - B2) . (B2 x u2) = u2 . (B1 x B2), so the cone condition is the plane
  // u2 . w = offset.
  const Vec3 w = cross(z1.B, B2);
  const double w_norm = w.norm();
  if (w_norm <= kMinFieldCross * p.r() * p.r()) return std::nullopt;
  const double offset = dot(z1.B - B2, z1.E);
  const double s = p.s();

  Vec3 u2;
  if (!has_velocity_constraint(kind)) {
    const Vec3 normal = w / w_norm;
    const double d = offset / w_norm;
    if (std::abs(d) > s) return std::nullopt;
    const double radius = std::sqrt(s * s - d * d);
    const Vec3 e1 = any_orthogonal(normal);
    const Vec3 e2 = cross(normal, e1);
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    u2 = d * normal + radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
  } else {
    // (u1 - u2) . (E1 - E2) = u2 . (u1 x (B1 - B2)): second plane through 0.
    const Vec3 v = cross(z1.u, z1.B - B2);
    const Vec3 line = cross(w, v);
    const double line_norm = line.norm();
    if (line_norm <= kMinPlaneSine * w_norm * v.norm()) return std::nullopt;
    const double wv = dot(w, v);
    const Vec3 foot = (offset / (line_norm * line_norm)) * (v.norm2() * w - wv * v);
    const double h2 = s * s - foot.norm2();
    if (h2 < 0.0) return std::nullopt;
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    u2 = foot + (sign * std::sqrt(h2) / line_norm) * line;
  }
  return LaminatePair{z1, ohm_point(B2, u2)};
}

LaminatePair draw_lambda_pair(SampleStream& rng, const HullParams& p, ConeKind kind, PairStats* stats) {
  for (std::size_t rejected = 0; rejected < kMaxPairRejections; ++rejected) {
    auto pair = try_draw_lambda_pair(rng, p, kind);
    if (stats) ++stats->attempts;
    if (pair) {
      if (stats) ++stats->accepted;
      return *pair;
    }
  }
  throw std::runtime_error("draw_lambda_pair: rejection cap exceeded for kind " + std::string(to_string(kind)));
}

LaminateSample draw_first_laminate(SampleStream& rng, const HullParams& p, ConeKind kind, PairStats* stats) {
  LaminateSample s;
  s.pair = draw_lambda_pair(rng, p, kind, stats);
  s.lambda = rng.uniform();
  s.point = s.lambda * s.pair.z1 + (1.0 - s.lambda) * s.pair.z2;
  return s;
}

Triple draw_hull_point(SampleStream& rng, const HullParams& p, ConeKind kind, std::size_t index) {
  const Vec3 B = rng.in_ball(p.r());
  const Vec3 u = rng.in_ball(p.s());
  const double delta = (index % 100 == 99) ? 1.0 : rng.uniform();

  Vec3 e;
  if (!has_velocity_constraint(kind)) {
    e = random_orthogonal(rng, B);
  } else {
    const Vec3 bxu = cross(B, u);
    const double n = bxu.norm();
    if (n > 1e-12 * p.r() * p.s()) {
      e = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (bxu / n);
    } else {
      e = random_orthogonal(rng, B.norm2() >= u.norm2() ? B : u);
    }
  }
  return {B, u, cross(B, u) + (delta * excess_bound(B, u, p)) * e};
}

std::vector<Triple> sample_K(const SampleConfig& cfg) {
  return collect(cfg, kTagK, [&](SampleStream& rng, std::size_t) { return draw_K(rng, cfg.params); });
}

std::vector<LaminatePair> sample_lambda_pair(const SampleConfig& cfg, PairStats* stats) {
  return collect(cfg, kTagPair,
                 [&](SampleStream& rng, std::size_t) { return draw_lambda_pair(rng, cfg.params, cfg.kind, stats); });
}

std::vector<LaminateSample> sample_first_laminate(const SampleConfig& cfg, PairStats* stats) {
  return collect(cfg, kTagPair,
                 [&](SampleStream& rng, std::size_t) { return draw_first_laminate(rng, cfg.params, cfg.kind, stats); });
}

std::vector<Triple> sample_hull(const SampleConfig& cfg) {
  return collect(cfg, kTagHull,
                 [&](SampleStream& rng, std::size_t i) { return draw_hull_point(rng, cfg.params, cfg.kind, i); });
}

double pair_cone_residual(const LaminatePair& pair, ConeKind kind) {
  const Triple d = pair.z1 - pair.z2;
  double res = std::abs(dot(d.B, d.E)) / (1.0 + d.B.norm() * d.E.norm());
  if (has_velocity_constraint(kind)) {
    res = std::max(res, std::abs(dot(d.u, d.E)) / (1.0 + d.u.norm() * d.E.norm()));
  }
  return res;
}

namespace {

struct ChunkResult {
  HullCheckReport partial;  // counters and maxima only
  std::vector<HullFailure> failures;
};

void record(ChunkResult& out, const char* stage, std::size_t index, const Triple& z, std::string reason,
            double residual, std::size_t cap) {
  ++out.partial.failure_count;
  if (out.failures.size() < cap) out.failures.push_back({stage, index, z, std::move(reason), residual});
}

ChunkResult inner_chunk(const SampleConfig& cfg, const HullCheckOptions& opts, const Tolerances& tol, std::size_t c) {
  ChunkResult out;
  HullCheckReport& rep = out.partial;
  Tolerances inner_tol = tol;
  inner_tol.eps_mem = opts.inner_slack;
  SampleStream rng(cfg.seed ^ kTagPair, c);
  const std::size_t end = std::min(cfg.count, (c + 1) * kChunkSize);
  for (std::size_t i = c * kChunkSize; i < end; ++i) {
    LaminateSample s;
    try {
      s = draw_first_laminate(rng, cfg.params, cfg.kind, &rep.pair_stats);
    } catch (const std::exception& e) {
      record(out, "inner", i, Triple{}, e.what(), INFINITY, opts.max_reported_failures);
      break;  // the stream is exhausted for this chunk
    }
    ++rep.inner_checked;
    const Triple& z = s.point;
    rep.inner_max_g1 = std::max(rep.inner_max_g1, std::abs(eval_g1(z)));
    const double bound = excess_bound(z.B, z.u, cfg.params);
    if (bound > 0.0) {
      rep.inner_max_excess_ratio = std::max(rep.inner_max_excess_ratio, distance(z.E, cross(z.B, z.u)) / bound);
    }
    if (!in_hull(z, cfg.params, cfg.kind, inner_tol)) {
      ++rep.inner_violations;
      const SeparationWitness w = separation_witness(z, cfg.params, cfg.kind, inner_tol);
      record(out, "inner", i, z, "first-laminate point outside hull (" + std::string(to_string(w.separator)) + ")",
             w.value, opts.max_reported_failures);
    }
  }
  return out;
}

ChunkResult hull_chunk(const SampleConfig& cfg, const HullCheckOptions& opts, const Tolerances& tol, std::size_t c) {
  ChunkResult out;
  HullCheckReport& rep = out.partial;
  Tolerances verify_tol = tol;
  verify_tol.eps_mem = opts.decomposition_bound;
  const bool stationary = has_velocity_constraint(cfg.kind);
  SampleStream rng(cfg.seed ^ kTagHull, c);
  const std::size_t end = std::min(cfg.count, (c + 1) * kChunkSize);
  for (std::size_t i = c * kChunkSize; i < end; ++i) {
    const Triple z = draw_hull_point(rng, cfg.params, cfg.kind, i);
    ++rep.hull_checked;
    try {
      const Decomposition d = decompose(z, cfg.params, cfg.kind, tol);
      const VerificationReport v = verify_decomposition(d, z, cfg.params, cfg.kind, verify_tol);
      const double lm = lambda_mu_residual(d, z, cfg.params);
      rep.max_residual = std::max(rep.max_residual, v.max_residual);
      rep.max_lambda_mu_residual = std::max(rep.max_lambda_mu_residual, lm);
      bool ok = v.passed && lm <= opts.decomposition_bound;
      if (stationary) {
        const Triple jump = d.z1 - d.z2;
        const double ue = std::abs(eval_g3(z)) / (1.0 + z.u.norm() * z.E.norm());
        const double ujump = std::abs(triple_product(z.u, jump.B, jump.u)) /
                             (1.0 + z.u.norm() * jump.B.norm() * jump.u.norm());
        rep.max_velocity_orthogonality = std::max({rep.max_velocity_orthogonality, ue, ujump});
        ok = ok && ue <= opts.decomposition_bound && ujump <= opts.decomposition_bound;
      }
      if (!ok) {
        ++rep.decomposition_failures;
        record(out, "surjective", i, z, "decomposition failed verification",
               std::max(v.max_residual, lm), opts.max_reported_failures);
      }
    } catch (const std::exception& e) {
      ++rep.decomposition_failures;
      record(out, "surjective", i, z, e.what(), INFINITY, opts.max_reported_failures);
    }
  }
  return out;
}

void merge(HullCheckReport& rep, std::vector<HullFailure>& failures, const ChunkResult& c, std::size_t cap) {
  const HullCheckReport& p = c.partial;
  rep.inner_checked += p.inner_checked;
  rep.inner_violations += p.inner_violations;
  rep.inner_max_g1 = std::max(rep.inner_max_g1, p.inner_max_g1);
  rep.inner_max_excess_ratio = std::max(rep.inner_max_excess_ratio, p.inner_max_excess_ratio);
  rep.hull_checked += p.hull_checked;
  rep.decomposition_failures += p.decomposition_failures;
  rep.max_residual = std::max(rep.max_residual, p.max_residual);
  rep.max_lambda_mu_residual = std::max(rep.max_lambda_mu_residual, p.max_lambda_mu_residual);
  rep.max_velocity_orthogonality = std::max(rep.max_velocity_orthogonality, p.max_velocity_orthogonality);
  rep.pair_stats.attempts += p.pair_stats.attempts;
  rep.pair_stats.accepted += p.pair_stats.accepted;
  rep.failure_count += p.failure_count;
  for (const auto& f : c.failures) {
    if (failures.size() < cap) failures.push_back(f);
  }
}

}  // namespace

HullCheckReport two_sided_hull_check(const SampleConfig& cfg, const Tolerances& tol, const HullCheckOptions& opts,
                                     Execution exec) {
  tol.validate();
  const std::size_t chunks = chunk_count(cfg.count);
  // Inner chunks occupy [0, chunks), surjective chunks [chunks, 2 chunks).
  std::vector<ChunkResult> results(2 * chunks);
  const auto n_tasks = static_cast<std::ptrdiff_t>(results.size());

  auto run = [&](std::ptrdiff_t t) {
    const auto c = static_cast<std::size_t>(t);
    results[c] = c < chunks ? inner_chunk(cfg, opts, tol, c) : hull_chunk(cfg, opts, tol, c - chunks);
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n_tasks; ++t) run(t);
  } else {
    for (std::ptrdiff_t t = 0; t < n_tasks; ++t) run(t);
  }

  HullCheckReport rep;
  rep.seed = cfg.seed;
  rep.params = cfg.params;
  rep.kind = cfg.kind;
  for (const auto& c : results) merge(rep, rep.failures, c, opts.max_reported_failures);
  return rep;
}

}  // namespace dynamo
