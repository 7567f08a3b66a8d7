#include <gtest/gtest.h>

#include <cmath>

#include "dynamo/core.hpp"
#include "dynamo/oracle.hpp"
#include "test_support.hpp"

using namespace dynamo;
using dynamo::testing::g2_by_grid;
using dynamo::testing::random_cone_direction;
using dynamo::testing::random_rotation;
using dynamo::testing::random_triple;

namespace {

const HullParams kUnit{1.0, 1.0};
constexpr ConeKind kNS = ConeKind::NonStationary;
constexpr ConeKind kSI = ConeKind::StationaryIncompressible;

}  // namespace

TEST(Types, RejectsNonFinite) {
  EXPECT_THROW(Vec3::checked(NAN, 0, 0), std::invalid_argument);
  EXPECT_THROW(Vec3::checked(0, INFINITY, 0), std::invalid_argument);
  EXPECT_THROW(Triple::checked({0, 0, 0}, {0, 0, 0}, {0, 0, NAN}), std::invalid_argument);
  EXPECT_NO_THROW(Triple::checked({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
}

TEST(Types, HullParamsMustBePositive) {
  EXPECT_THROW(HullParams(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(HullParams(1.0, -2.0), std::invalid_argument);
  EXPECT_THROW(HullParams(NAN, 1.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(HullParams(0.5, 2.0).scale(), 2.0);
  EXPECT_DOUBLE_EQ(HullParams(0.5, 0.5).scale(), 1.0);
}

TEST(Types, TolerancesValidate) {
  Tolerances t;
  EXPECT_NO_THROW(t.validate());
  t.eps_root = t.eps_mem;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  EXPECT_THROW(Tolerances::with_membership(-1.0), std::invalid_argument);
}

TEST(Types, ConeKindNames) {
  for (auto k : {ConeKind::NonStationary, ConeKind::NonStationaryIncompressible, ConeKind::Stationary,
                 ConeKind::StationaryIncompressible}) {
    EXPECT_EQ(parse_cone_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_cone_kind("turbulent").has_value());
}

TEST(ConstraintSet, Examples) {
  EXPECT_TRUE(in_constraint_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, kUnit));
  EXPECT_FALSE(in_constraint_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, kUnit));
  EXPECT_TRUE(in_constraint_set({{0.6, 0.8, 0}, {0, 0, 1}, {0.8, -0.6, 0}}, kUnit));
}

TEST(ConstraintSet, AmplitudeConvention) {
  // |B| = r and |u| = s, not the other way round.
  const HullParams p(2.0, 0.5);
  EXPECT_TRUE(in_constraint_set(ohm_point({2, 0, 0}, {0, 0.5, 0}), p));
  EXPECT_FALSE(in_constraint_set(ohm_point({0.5, 0, 0}, {0, 2, 0}), p));
}

TEST(WaveCone, Examples) {
  EXPECT_TRUE(in_wave_cone({{1, 0, 0}, {3, -2, 7}, {0, 1, 0}}, kNS));
  EXPECT_FALSE(in_wave_cone({{1, 0, 0}, {0, 0, 0}, {1, 0, 0}}, kNS));
  EXPECT_TRUE(in_wave_cone({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, kSI));
  // u.E != 0 only matters for the stationary incompressible cone.
  const Triple z{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
  EXPECT_TRUE(in_wave_cone(z, kNS));
  EXPECT_TRUE(in_wave_cone(z, ConeKind::NonStationaryIncompressible));
  EXPECT_TRUE(in_wave_cone(z, ConeKind::Stationary));
  EXPECT_FALSE(in_wave_cone(z, kSI));
}

TEST(Separators, G1Examples) {
  EXPECT_EQ(eval_g1({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 0.0);
  EXPECT_DOUBLE_EQ(eval_g1({{1, 0, 0}, {5, 5, 5}, {0.1, 0, 1}}), 0.1);
  EXPECT_EQ(eval_g1({{0, 0, 0}, {1, 2, 3}, {7, 7, 7}}), 0.0);
}

TEST(Separators, G2Examples) {
  EXPECT_EQ(eval_g2({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, kUnit), 0.0);
  EXPECT_DOUBLE_EQ(eval_g2({}, kUnit), -1.0);
  EXPECT_NEAR(eval_g2({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, kUnit), 0.0, 1e-15);
  // The grid oracle agrees on the last one (maximiser alpha = 1/2).
  EXPECT_NEAR(g2_by_grid({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, 1, 1), 0.0, 1e-12);
}

TEST(Separators, G3Examples) {
  EXPECT_EQ(eval_g3({{9, 9, 9}, {0, 1, 0}, {0, 0, 1}}), 0.0);
  EXPECT_EQ(eval_g3({{9, 9, 9}, {0, 1, 0}, {0, 2, 0}}), 2.0);
  SampleStream rng(11, 0);
  for (int i = 0; i < 100; ++i) {
    const Triple z = draw_K(rng, kUnit);
    EXPECT_NEAR(eval_g3(z), 0.0, 1e-15);
  }
}

TEST(Separators, G2ClosedFormMatchesGridMaximisation) {
  SampleStream rng(3, 0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform(0.3, 2.5), s = rng.uniform(0.3, 2.5);
    const Triple z = random_triple(rng, 2.0);
    worst = std::max(worst, std::abs(eval_g2(z, HullParams(r, s)) - g2_by_grid(z, r, s)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Separators, G1AndG3AreAffineAlongConeLines) {
  SampleStream rng(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const Triple z0 = random_triple(rng, 2.0);
    const double t = rng.uniform(-1.0, 1.0);
    for (bool stationary : {false, true}) {
      const Triple dir = random_cone_direction(rng, stationary);
      const Triple zp = z0 + t * dir, zm = z0 - t * dir;
      auto second_diff = [&](auto g) {
        const double scale = std::abs(g(zp)) + std::abs(g(zm)) + 2 * std::abs(g(z0)) + 1.0;
        return std::abs(g(zp) + g(zm) - 2 * g(z0)) / scale;
      };
      EXPECT_LE(second_diff(eval_g1), 1e-10);
      if (stationary) EXPECT_LE(second_diff(eval_g3), 1e-10);
    }
  }
}

TEST(Separators, G2IsConvex) {
  SampleStream rng(6, 0);
  for (int i = 0; i < 2000; ++i) {
    const HullParams p(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    const Triple z0 = random_triple(rng, 2.0), dir = random_triple(rng, 2.0);
    const double t = rng.uniform(-1.0, 1.0);
    const double slack = 0.5 * (eval_g2(z0 + t * dir, p) + eval_g2(z0 - t * dir, p)) - eval_g2(z0, p);
    EXPECT_GE(slack, -1e-8);
  }
}

TEST(Hull, Examples) {
  EXPECT_TRUE(in_hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, kUnit, kNS));
  EXPECT_FALSE(in_hull({{0, 0, 0}, {0, 0, 0}, {0, 0, 1.5}}, kUnit, kNS));
  // Equality case: |E - B x u| = 0.64 = sqrt((1 - 0.36)(1 - 0.36)).
  const Triple boundary{{0.6, 0, 0}, {0, 0.6, 0}, {0, 0, 1.0}};
  EXPECT_NEAR(distance(boundary.E, cross(boundary.B, boundary.u)), 0.64, 1e-15);
  EXPECT_NEAR(excess_bound(boundary.B, boundary.u, kUnit), 0.64, 1e-15);
  EXPECT_TRUE(in_hull(boundary, kUnit, kNS));
  EXPECT_FALSE(in_hull({{0.6, 0, 0}, {0, 0.6, 0}, {0, 0, 1.01}}, kUnit, kNS));
}

TEST(Hull, StationaryIncompressibleNeedsVelocityOrthogonality) {
  const Triple z{{0.5, 0, 0}, {0, 0.5, 0.1}, {0, 0.1, 0.2}};
  ASSERT_NEAR(eval_g1(z), 0.0, 0.0);
  EXPECT_TRUE(in_hull(z, kUnit, kNS));
  EXPECT_FALSE(in_hull(z, kUnit, kSI));
}

TEST(Hull, ExplicitInequalitiesAgreeWithSeparators) {
  SampleStream rng(7, 0);
  int inside = 0;
  for (int i = 0; i < 20000; ++i) {
    const HullParams p(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    const ConeKind kind = i % 2 ? kSI : kNS;
    // Mix hull samples (often inside) with perturbed ones (often outside).
    Triple z = draw_hull_point(rng, p, kind, static_cast<std::size_t>(i));
    if (i % 3 == 1) z.E *= rng.uniform(0.5, 1.5);
    if (i % 3 == 2) z.B *= rng.uniform(0.8, 1.2);
    if (i % 5 == 0) z.E += Vec3{0, 0, rng.uniform(-0.01, 0.01)};
    const bool a = in_hull(z, p, kind);
    EXPECT_EQ(a, in_hull_by_separators(z, p, kind)) << "sample " << i;
    inside += a;
  }
  EXPECT_GT(inside, 1000);
  EXPECT_LT(inside, 19000);
}

TEST(Hull, MonotoneInRadii) {
  SampleStream rng(8, 0);
  for (int i = 0; i < 5000; ++i) {
    const HullParams p(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    const Triple z = draw_hull_point(rng, p, kNS, static_cast<std::size_t>(i));
    const HullParams bigger(p.r() * rng.uniform(1.0, 2.0), p.s() * rng.uniform(1.0, 2.0));
    ASSERT_TRUE(in_hull(z, p, kNS));
    EXPECT_TRUE(in_hull(z, bigger, kNS));
  }
}

TEST(Hull, BoundaryCollapse) {
  SampleStream rng(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 B = rng.unit_vector();
    const Vec3 u = rng.in_ball(1.0);
    const Vec3 e = any_orthogonal(B);
    // |B| = r forces E = B x u, whatever the velocity.
    EXPECT_FALSE(in_hull({B, u, cross(B, u) + 1e-3 * e}, kUnit, kNS));
    EXPECT_TRUE(in_hull({B, u, cross(B, u)}, kUnit, kNS));
  }
}

TEST(Hull, ScalingAndRotationSymmetry) {
  SampleStream rng(10, 0);
  for (int i = 0; i < 5000; ++i) {
    const HullParams p(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    const ConeKind kind = i % 2 ? kSI : kNS;
    Triple z = draw_hull_point(rng, p, kind, static_cast<std::size_t>(i));
    // Keep clear of the boundary so rounding cannot flip membership.
    const Vec3 excess = z.E - cross(z.B, z.u);
    z.E = cross(z.B, z.u) + (i % 4 == 0 ? 1.3 : 0.95) * excess;
    const bool member = in_hull(z, p, kind);

    const double a = rng.uniform(0.3, 3.0), b = rng.uniform(0.3, 3.0);
    const Triple scaled{a * z.B, b * z.u, (a * b) * z.E};
    EXPECT_EQ(in_hull(scaled, HullParams(a * p.r(), b * p.s()), kind), member);

    const auto rot = random_rotation(rng);
    EXPECT_EQ(in_hull(rot(z), p, kind), member);
  }
}

TEST(Witness, Examples) {
  const auto w1 = separation_witness({{1.1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, kUnit, kNS);
  EXPECT_EQ(w1.separator, Separator::G2);
  EXPECT_NEAR(w1.value, 0.21, 1e-12);

  const auto w2 = separation_witness({{1, 0, 0}, {0, 1, 0}, {0.1, 0, 1}}, kUnit, kNS);
  EXPECT_EQ(w2.separator, Separator::G1);
  EXPECT_NEAR(w2.value, 0.1, 1e-15);

  const auto w3 = separation_witness({{1, 0, 0}, {0, 0, 1}, {0, 0, 0.5}}, kUnit, kSI);
  EXPECT_EQ(w3.separator, Separator::G3);
  EXPECT_NEAR(w3.value, 0.5, 1e-15);

  const auto none = separation_witness({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, kUnit, kNS);
  EXPECT_EQ(none.separator, Separator::None);
}

TEST(Witness, EveryExcludedPointIsSeparated) {
  SampleStream rng(12, 0);
  for (int i = 0; i < 5000; ++i) {
    const Triple z = random_triple(rng, 1.2);
    const ConeKind kind = i % 2 ? kSI : kNS;
    const auto w = separation_witness(z, kUnit, kind);
    if (in_hull(z, kUnit, kind)) {
      EXPECT_EQ(w.separator, Separator::None);
      continue;
    }
    ASSERT_NE(w.separator, Separator::None);
    if (w.separator == Separator::G2) EXPECT_GT(w.value, 0.0);
    if (w.separator != Separator::G2) EXPECT_NE(w.value, 0.0);
  }
}
