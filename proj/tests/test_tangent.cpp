#include <gtest/gtest.h>

#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/expr.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/spaces.hpp"
#include "alexgeo/tangent.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

Sigma circle(double length) {
  Sigma s;
  s.length = length;
  return s;
}

std::vector<SpacePtr> flat_spaces() {
  return {make_plane(), make_cone(kPi / 2), make_cone(kPi), make_cone(4.0), make_cone(3 * kPi / 2),
          make_polygon({{0, 0}, {3, 0}, {3, 2}, {0, 2}})};
}

}  // namespace

TEST(Tangent, ScalarProductWrapsOnShortCircles) {
  const Sigma s = circle(3 * kPi / 2);
  const TangentVec u{1, 0, s}, v{1, 3 * kPi / 4, s};
  EXPECT_NEAR(scalar_product(u, v), -std::sqrt(2.0) / 2, 1e-15);
  // 5pi/4 apart one way is pi/4 the other way round.
  EXPECT_NEAR(scalar_product(u, TangentVec{2, 5 * kPi / 4, s}), 2 * std::cos(kPi / 4), 1e-15);
  // Beyond pi the cone distance is the sum of norms.
  EXPECT_NEAR(tangent_distance(TangentVec{1, 0, circle(2 * kPi)}, TangentVec{2, kPi, circle(2 * kPi)}), 3, 1e-15);
}

TEST(Tangent, DifferentialMatchesDifferenceQuotient) {
  for (const auto& S : flat_spaces()) {
    Gen g(41);
    for (int i = 0; i < 40; ++i) {
      const Point p = g.point(*S), q = g.point(*S);
      if (S->distance(p, q) < 0.1 || S->boundary_distance(p) < 0.05) continue;
      const ExprPtr f = sum({dist(q), rho_dist(0, g.point(*S))});
      const DirectionalFn d = differential(f, *S, p);
      for (double xi : d.sigma.grid(12)) {
        const double h = 1e-6;
        const auto shot = S->shoot(p, xi, h);
        if (shot.length < h) continue;
        const double fd = (eval(f, *S, shot.end) - eval(f, *S, p)) / h;
        EXPECT_NEAR(d(xi), fd, 2e-5) << S->name();
      }
    }
  }
}

TEST(Tangent, DistanceFromItselfGrowsAtUnitRate) {
  auto S = make_cone(3 * kPi / 2);
  const Point p = PolarPoint{1, 0.2};
  const DirectionalFn d = differential(dist(p), *S, p);
  for (double xi : d.sigma.grid(30)) EXPECT_DOUBLE_EQ(d(xi), 1.0);
}

TEST(Tangent, GradientOfPlaneQuadratic) {
  auto S = make_plane();
  const Point q = PolarPoint{2, 1.0}, p = PolarPoint{0.5, -0.3};
  const TangentVec g = gradient(scaled(-0.5, dist_sq(q)), *S, p);
  const auto v = log_map(*S, p, q);
  EXPECT_NEAR(g.norm, v.norm, 1e-9);
  EXPECT_NEAR(S->sigma(p).arcdist(g.angle, v.angle), 0, 1e-9);
}

TEST(Tangent, ApexOfNarrowConeHasZeroGradient) {
  Gen g(42);
  for (double th : {kPi / 2, 2.0, kPi}) {
    auto S = make_cone(th);
    for (int i = 0; i < 20; ++i) {
      const Point a = g.point(*S);
      EXPECT_TRUE(gradient(rho_dist(0, a), *S, PolarPoint{0, 0}).is_origin()) << th;
      EXPECT_TRUE(gradient(dist(a), *S, PolarPoint{0, 0}).is_origin()) << th;
    }
  }
}

TEST(Tangent, GradientInequality) {
  // f = |a x|^2 / 2 is 1-concave on curvature >= 0.
  for (const auto& S : flat_spaces()) {
    Gen g(43);
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
      const Point a = g.point(*S), p = g.point(*S), q = g.point(*S);
      const double l = S->distance(p, q);
      if (l < 1e-3) continue;
      const ExprPtr f = rho_dist(0, a);
      const TangentVec grad = gradient(f, *S, p);
      const auto dirs = S->directions_to(p, q);
      if (dirs.angles.empty()) continue;
      const TangentVec up{1, dirs.angles.front(), S->sigma(p)};
      const double lhs = grad.is_origin() ? 0 : scalar_product(up, grad);
      const double rhs = (eval(f, *S, q) - eval(f, *S, p) - 0.5 * l * l) / l;
      EXPECT_GE(lhs, rhs - 1e-6) << S->name();
      ++tested;
    }
    EXPECT_GT(tested, 450);
  }
}

TEST(Tangent, PolarExamples) {
  const TangentVec v{1.5, 0.7, circle(2 * kPi)};
  const TangentVec w = polar_vector(v);
  EXPECT_NEAR(w.norm, 1.5, 0);
  EXPECT_NEAR(circle(2 * kPi).arcdist(w.angle, 0.7), kPi, 1e-12);

  const TangentVec x = polar_vector(TangentVec{1, 0, circle(3 * kPi / 2)});
  EXPECT_NEAR(x.angle, kPi, 1e-12);
  EXPECT_NEAR(circle(3 * kPi / 2).arcdist(0, x.angle), kPi / 2, 1e-12);

  const TangentVec y = polar_vector(TangentVec{1, 0.4, circle(kPi)});
  EXPECT_NEAR(circle(kPi).arcdist(y.angle, 0.4), 0, 1e-12);
}

TEST(Tangent, PolarInequalityForConcaveDifferentials) {
  for (const auto& S : flat_spaces()) {
    Gen g(44);
    for (int i = 0; i < 100; ++i) {
      const Point p = g.point(*S);
      if (S->has_boundary() && S->boundary_distance(p) < 1e-6) continue;
      const ExprPtr f = rho_dist(0, g.point(*S));
      const DirectionalFn d = differential(f, *S, p);
      const Sigma sig = S->sigma(p);
      const TangentVec u{1, g.uniform(0, sig.length), sig};
      const TangentVec v = polar_vector(u);
      // d f(u) + d f(v) <= 0 for 1-concave f; the quadratic term vanishes in the limit.
      EXPECT_LE(d.at(u) + d.at(v), 1e-9) << S->name();
    }
  }
}

TEST(Tangent, SupportingVectorsDominateGradient) {
  Gen g(45);
  for (const auto& S : flat_spaces()) {
    for (int i = 0; i < 30; ++i) {
      const Point p = g.point(*S);
      const ExprPtr f = rho_dist(0, g.point(*S));
      const DirectionalFn d = differential(f, *S, p);
      const TangentVec grad = gradient(d);
      for (int k = 0; k < 20; ++k) {
        const TangentVec s{g.uniform(0, 4), g.uniform(0, d.sigma.length), d.sigma};
        if (supporting_check(d, s).supporting) EXPECT_GE(s.norm, grad.norm - 1e-9) << S->name();
      }
    }
  }
}

TEST(Tangent, GradientTieBreakPrefersSmallestCoordinate) {
  // d_p dist_p is 1 in every direction: every direction maximizes, and the
  // gradient inequality has no solution, which verification reports.
  auto S = make_cone(3 * kPi / 2);
  const Point p = PolarPoint{1, 0.5};
  GradientOptions o;
  o.verify = false;
  const TangentVec g = gradient(dist(p), *S, p, o);
  EXPECT_NEAR(g.norm, 1, 1e-12);
  EXPECT_EQ(g.angle, S->sigma(p).grid(2).front());
  EXPECT_THROW(gradient(dist(p), *S, p), InvariantBreach);
}
