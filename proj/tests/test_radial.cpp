#include <gtest/gtest.h>

#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/expr.hpp"
#include "alexgeo/flow.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/radial.hpp"
#include "alexgeo/spaces.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

TangentVec vec(const Space& S, const Point& p, double norm, double angle) { return {norm, angle, S.sigma(p)}; }

}  // namespace

TEST(Radial, GeodesicRegimeOnThePlane) {
  auto P = make_plane();
  const Point p = PolarPoint{1, 0};
  const Point e = gexp_map(P, p, vec(*P, p, 0.7, 2.0), 0);
  const auto v = log_map(*P, p, e);
  EXPECT_NEAR(v.norm, 0.7, 1e-9);
  EXPECT_NEAR(v.angle, 2.0, 1e-9);
}

TEST(Radial, GexpInvertsLog) {
  auto C = make_cone(3 * kPi / 2);
  Gen g(61);
  const Point p = PolarPoint{1, 0.4};
  for (int i = 0; i < 50; ++i) {
    const Point q = g.point(*C);
    const TangentVec v = log_map(*C, p, q);
    EXPECT_NEAR(C->distance(gexp_map(C, p, v, 0), q), 0, 1e-9);
  }
}

TEST(Radial, TangentConeMetricDegenerateHinges) {
  const Sigma s;
  const TangentVec u{0.7, 0, s}, v{1.1, kPi, s}, w{1.1, 0, s};
  EXPECT_NEAR(tangent_cone_metric(-1, u, v), 1.8, 1e-12);
  EXPECT_NEAR(tangent_cone_metric(0, u, v), 1.8, 1e-12);
  EXPECT_NEAR(tangent_cone_metric(1, u, w), 0.4, 1e-12);
  EXPECT_NEAR(tangent_cone_metric(0, u, w), 0.4, 1e-12);
  // Right angle: Pythagoras, spherical and hyperbolic laws.
  const TangentVec a{0.6, 0, s}, b{0.8, kPi / 2, s};
  EXPECT_NEAR(tangent_cone_metric(0, a, b), 1.0, 1e-12);
  EXPECT_NEAR(tangent_cone_metric(1, a, b), std::acos(std::cos(0.6) * std::cos(0.8)), 1e-12);
  EXPECT_NEAR(tangent_cone_metric(-1, a, b), std::acosh(std::cosh(0.6) * std::cosh(0.8)), 1e-12);
}

TEST(Radial, ShortOnCones) {
  for (double th : {kPi / 2, kPi, 3 * kPi / 2}) {
    auto C = make_cone(th);
    const Point o = PolarPoint{0.7, 0.5 * th / (2 * kPi)};
    Gen g(62);
    RadialOptions ro;
    ro.h = 2e-3;
    for (int i = 0; i < 40; ++i) {
      const Sigma sg = C->sigma(o);
      const TangentVec u{g.uniform(0, 1.5), g.uniform(0, sg.length), sg};
      const TangentVec v{g.uniform(0, 1.5), g.uniform(0, sg.length), sg};
      const double d = C->distance(gexp_map(C, o, u, 0, ro), gexp_map(C, o, v, 0, ro));
      EXPECT_LE(d, tangent_cone_metric(0, u, v) + 1e-2) << th;
    }
  }
}

TEST(Radial, ApexBaseIsIsometric) {
  auto C = make_cone(kPi);
  const Point o = PolarPoint{0, 0};
  Gen g(63);
  for (int i = 0; i < 50; ++i) {
    const Sigma sg = C->sigma(o);
    const TangentVec u{g.uniform(0, 2), g.uniform(0, sg.length), sg};
    const TangentVec v{g.uniform(0, 2), g.uniform(0, sg.length), sg};
    EXPECT_NEAR(C->distance(gexp_map(C, o, u, 0), gexp_map(C, o, v, 0)), tangent_cone_metric(0, u, v), 1e-9);
  }
}

TEST(Radial, ShortOnSpindle) {
  auto S = make_spindle(1.5 * kPi);
  const Point o = PolarPoint{0.6, 0.3};
  Gen g(64);
  RadialOptions ro;
  ro.h = 2e-3;
  for (int i = 0; i < 30; ++i) {
    const Sigma sg = S->sigma(o);
    const TangentVec u{g.uniform(0, 1.5), g.uniform(0, sg.length), sg};
    const TangentVec v{g.uniform(0, 1.5), g.uniform(0, sg.length), sg};
    EXPECT_LE(S->distance(gexp_map(S, o, u, 1, ro), gexp_map(S, o, v, 1, ro)), tangent_cone_metric(1, u, v) + 1e-2);
  }
}

TEST(Radial, SphericalRangeIsLimited) {
  auto S = make_spindle(2 * kPi);
  EXPECT_THROW(radial_curve(S, PolarPoint{1, 0}, 0.3, 1, 2.0), DomainError);
}

TEST(Radial, SemigroupIdentity) {
  // Flowing gexp_p(v) along grad |p.|^2/2 for time t lands on gexp_p(e^t v).
  auto C = make_cone(3 * kPi / 2);
  const Point p = PolarPoint{1, 0};
  RadialOptions ro;
  ro.h = 1e-3;
  FlowOptions fo;
  fo.h = 1e-3;
  const ExprPtr f = rho_dist(0, p);
  for (double xi : {kPi, 2.5, 3.6}) {
    for (double t : {0.2, 0.5}) {
      const Point start = gexp_map(C, p, vec(*C, p, 0.8, xi), 0, ro);
      const auto flowed = gradient_curve(f, C, start, t, fo);
      const Point target = gexp_map(C, p, vec(*C, p, 0.8 * std::exp(t), xi), 0, ro);
      EXPECT_LT(C->distance(flowed.samples.back().p, target), 2e-2) << xi << " " << t;
    }
  }
}

TEST(Radial, ComparisonAngleNonIncreasing) {
  auto C = make_cone(3 * kPi / 2);
  const Point p = PolarPoint{1, 0};
  std::vector<double> grid;
  for (int k = 1; k <= 36; ++k) grid.push_back(0.05 * k);
  Gen g(65);
  RadialOptions ro;
  ro.h = 1e-3;
  for (int i = 0; i < 10; ++i) {
    const auto r = verify_radial_comparison(C, p, kPi, g.point(*C), 0, grid, ro);
    EXPECT_TRUE(r.pass(1e-6 + 10 * ro.h));
  }
}

TEST(Radial, ThetaMonotone) {
  auto S = make_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const ExprPtr f = dist_boundary(*S);
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(0.03 * k);
  const auto r = verify_theta_monotone(f, S, PlanarPoint{0.6, 0.9}, 0.4, 0, grid);
  EXPECT_LE(r.max_increase, 1e-6);
}

TEST(Radial, TangentToBoundaryStaysInBoundary) {
  auto S = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Point p = PlanarPoint{0.3, 0};
  const auto c = radial_curve(S, p, 0, 0, 1.2);
  for (const auto& s : c.samples) EXPECT_LT(S->boundary_distance(s.p), 1e-9);
}

TEST(Radial, InverseCheckOnCone) {
  auto C = make_cone(3 * kPi / 2);
  const auto g = geodesic(C, PolarPoint{1, 0}, PolarPoint{0.8, 2.0}, 40);
  RadialOptions ro;
  ro.h = 5e-3;
  const auto r = gexp_inverse_check(C, g, 24, ro);
  EXPECT_EQ(r.reentries, 0);
  EXPECT_GT(r.probes, 0);
}
