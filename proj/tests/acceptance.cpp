// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dynamo/cli.hpp"
#include "dynamo/core.hpp"
#include "dynamo/io.hpp"
#include "dynamo/laminate.hpp"
#include "dynamo/oracle.hpp"
#include "dynamo/planewave.hpp"
#include "test_support.hpp"

using namespace dynamo;

namespace {

// Pinned tolerances.
constexpr double kInnerSlack = 1e-10;
constexpr double kDecompositionBound = 1e-9;
constexpr double kG2GridTol = 1e-8;
constexpr double kAffineTol = 1e-10;
constexpr double kConvexSlack = -1e-8;
constexpr double kBoundaryExcess = 1e-3;
constexpr double kPlaneWaveTol = 1e-12;
constexpr double kMinConvergenceRatio = 3.0;
constexpr double kHalvingLo = 0.3;
constexpr double kHalvingHi = 0.7;
constexpr double kLambdaMuTol = 1e-9;

constexpr std::size_t kInnerCount = 100000;
constexpr std::size_t kHullCount = 10000;
constexpr std::array<double, 3> kRadii{0.5, 1.0, 2.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

// Inner side with kInnerCount samples and surjective side with kHullCount;
// two_sided_hull_check uses one count for both, so run the larger and the
// smaller campaign and take the inner half of the first.
struct Campaign {
  HullCheckReport inner;
  HullCheckReport hull;
};

std::vector<Campaign> g_campaigns_ns, g_campaigns_si;

Campaign run_campaign(double r, double s, ConeKind kind) {
  HullCheckOptions opts;
  opts.inner_slack = kInnerSlack;
  opts.decomposition_bound = kDecompositionBound;
  const Tolerances tol;
  return {two_sided_hull_check({0, kInnerCount, HullParams(r, s), kind}, tol, opts),
          two_sided_hull_check({0, kHullCount, HullParams(r, s), kind}, tol, opts)};
}

Outcome hull_equality(ConeKind kind, std::vector<Campaign>& store) {
  std::size_t inner_bad = 0, hull_bad = 0, checked = 0;
  double worst = 0.0, worst_vel = 0.0;
  for (double r : kRadii) {
    for (double s : kRadii) {
      Campaign c = run_campaign(r, s, kind);
      inner_bad += c.inner.inner_violations;
      hull_bad += c.hull.decomposition_failures;
      checked += c.inner.inner_checked + c.hull.hull_checked;
      worst = std::max({worst, c.hull.max_residual, c.inner.max_residual});
      worst_vel = std::max({worst_vel, c.hull.max_velocity_orthogonality, c.inner.max_velocity_orthogonality});
      // The larger campaign's surjective half must pass as well.
      hull_bad += c.inner.decomposition_failures;
      store.push_back(std::move(c));
    }
  }
  std::string detail = "checked " + std::to_string(checked) + ", inner violations " + std::to_string(inner_bad) +
                       ", decomposition failures " + std::to_string(hull_bad) + fmt(", max residual %.3g", worst);
  bool pass = inner_bad == 0 && hull_bad == 0 && worst <= kDecompositionBound;
  if (has_velocity_constraint(kind)) {
    detail += fmt(", max velocity orthogonality %.3g", worst_vel);
    pass = pass && worst_vel <= kDecompositionBound;
  }
  return {pass, detail};
}

Outcome criterion1() { return hull_equality(ConeKind::NonStationary, g_campaigns_ns); }
Outcome criterion2() { return hull_equality(ConeKind::StationaryIncompressible, g_campaigns_si); }

Outcome criterion3() {
  SampleStream rng(1003, 0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double r = rng.uniform(0.3, 2.5), s = rng.uniform(0.3, 2.5);
    const Triple z = testing::random_triple(rng, 2.0);
    worst = std::max(worst, std::abs(eval_g2(z, HullParams(r, s)) - testing::g2_by_grid(z, r, s, 10000)));
  }
  return {worst <= kG2GridTol, fmt("max |closed form - grid| = %.3g over 10000 triples", worst)};
}

Outcome criterion4() {
  SampleStream rng(1004, 0);
  double worst_affine = 0.0, worst_convex = INFINITY;
  auto rel_second_diff = [](auto g, const Triple& zp, const Triple& zm, const Triple& z0) {
    const double scale = std::abs(g(zp)) + std::abs(g(zm)) + 2 * std::abs(g(z0)) + 1.0;
    return std::abs(g(zp) + g(zm) - 2 * g(z0)) / scale;
  };
  for (int i = 0; i < 10000; ++i) {
    const Triple z0 = testing::random_triple(rng, 2.0);
    const double t = rng.uniform(-1.0, 1.0);
    const Triple d_ns = testing::random_cone_direction(rng, false);
    worst_affine = std::max(worst_affine, rel_second_diff(eval_g1, z0 + t * d_ns, z0 - t * d_ns, z0));
    const Triple d_si = testing::random_cone_direction(rng, true);
    worst_affine = std::max(worst_affine, rel_second_diff(eval_g1, z0 + t * d_si, z0 - t * d_si, z0));
    worst_affine = std::max(worst_affine, rel_second_diff(eval_g3, z0 + t * d_si, z0 - t * d_si, z0));

    const HullParams p(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    const Triple a = testing::random_triple(rng, 2.0), b = testing::random_triple(rng, 2.0);
    const double slack = 0.5 * (eval_g2(a, p) + eval_g2(b, p)) - eval_g2(0.5 * (a + b), p);
    worst_convex = std::min(worst_convex, slack);
  }
  return {worst_affine <= kAffineTol && worst_convex >= kConvexSlack,
          fmt("max relative second difference %.3g", worst_affine) + fmt(", min midpoint slack %.3g", worst_convex)};
}

Outcome criterion5() {
  SampleStream rng(1005, 0);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    const HullParams p(kRadii[i % 3], kRadii[(i / 3) % 3]);
    const Vec3 B = p.r() * rng.unit_vector();
    const Vec3 u = rng.in_ball(p.s());
    const Vec3 e = normalized(any_orthogonal(B));
    const Triple z{B, u, cross(B, u) + kBoundaryExcess * e};
    accepted += in_hull(z, p, ConeKind::NonStationary);
  }
  return {accepted == 0, std::to_string(accepted) + " of 1000 boundary points accepted"};
}

Outcome criterion6() {
  SampleStream rng(1006, 0);
  constexpr std::array kinds{ConeKind::NonStationary, ConeKind::NonStationaryIncompressible, ConeKind::Stationary,
                             ConeKind::StationaryIncompressible};
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const ConeKind kind = kinds[i % 4];
    const Triple dir = testing::random_cone_direction(rng, kind == ConeKind::StationaryIncompressible);
    worst = std::max(worst, plane_wave_condition_residual(dir, wave_vector_for(dir, kind), kind));
  }
  double min_ratio = INFINITY;
  int defined = 0;
  const std::array sizes{8, 16, 32};
  for (int i = 0; i < 8; ++i) {
    const ConeKind kind = kinds[i % 4];
    const Triple dir = testing::random_cone_direction(rng, kind == ConeKind::StationaryIncompressible);
    const auto rep = residual_convergence(dir, wave_vector_for(dir, kind), kind, sizes);
    for (const auto* ratios : {&rep.gauss_ratios, &rep.faraday_ratios}) {
      for (double x : *ratios) {
        if (!std::isfinite(x)) continue;
        min_ratio = std::min(min_ratio, x);
        ++defined;
      }
    }
  }
  return {worst <= kPlaneWaveTol && defined > 0 && min_ratio >= kMinConvergenceRatio,
          fmt("max condition residual %.3g", worst) + fmt(", min refinement ratio %.3f", min_ratio) + " over " +
              std::to_string(defined) + " ratios"};
}

Outcome criterion7() {
  SampleStream rng(1007, 0);
  const HullParams p(1.0, 1.0);
  const GridSpec g = GridSpec::periodic(1 << 14);
  int done = 0, bad_ratio = 0, bad_hull = 0, bad_k = 0;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; done < 100; ++i) {
    const Triple z = draw_hull_point(rng, p, ConeKind::NonStationary, i);
    const Decomposition d = decompose(z, p, ConeKind::NonStationary);
    const Triple jump = d.z1 - d.z2;
    if (jump.norm() < 1e-6) continue;
    const WaveVector xi = wave_vector_for(jump, ConeKind::NonStationary);
    double prev = 0.0;
    for (int n_osc : {8, 16, 32}) {
      const auto res = staircase_average(d, xi, n_osc, g);
      if (prev > 0.0) {
        const double ratio = res.weak_error / prev;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        bad_ratio += ratio < kHalvingLo || ratio > kHalvingHi;
      }
      prev = res.weak_error;
      bad_hull += !in_hull(res.average, p, ConeKind::NonStationary, Tolerances::with_membership(1e-8));
      if (d.lambda > 0.1 && d.lambda < 0.9) bad_k += in_constraint_set(res.average, p);
    }
    ++done;
  }
  return {bad_ratio == 0 && bad_hull == 0 && bad_k == 0,
          fmt("halving ratios in [%.3f, ", lo) + fmt("%.3f]", hi) + ", averages outside hull " +
              std::to_string(bad_hull) + ", averages in K " + std::to_string(bad_k)};
}

Outcome criterion8() {
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto* store : {&g_campaigns_ns, &g_campaigns_si}) {
    for (const auto& c : *store) {
      worst = std::max({worst, c.inner.max_lambda_mu_residual, c.hull.max_lambda_mu_residual});
      n += c.inner.hull_checked + c.hull.hull_checked;
    }
  }
  return {n > 0 && worst <= kLambdaMuTol,
          fmt("max residual %.3g over ", worst) + std::to_string(n) + " decompositions"};
}

Outcome criterion9() {
  int mismatches = 0;
  for (double r : kRadii) {
    for (double s : kRadii) {
      std::vector<std::string> args{"dynamo_hull", "verify-hull", "--r", format_double(r), "--s", format_double(s),
                                    "--count", std::to_string(kInnerCount), "--seed", "0", "--deterministic"};
      std::string reports[2];
      for (auto& report : reports) {
        std::istringstream in;
        std::ostringstream out, err;
        if (cli::run(args, in, out, err) != cli::kExitOk) ++mismatches;
        report = out.str();
      }
      mismatches += reports[0] != reports[1] || reports[0].empty();
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatching report pairs out of 9"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 two-sided hull equality", criterion1},
      {"2 stationary incompressible hull equality", criterion2},
      {"3 G2 closed form vs grid", criterion3},
      {"4 cone affinity of G1, G3 and convexity of G2", criterion4},
      {"5 boundary collapse", criterion5},
      {"6 plane-wave conditions and residual convergence", criterion6},
      {"7 staircase averaging", criterion7},
      {"8 lambda mu identity", criterion8},
      {"9 deterministic reports", criterion9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
