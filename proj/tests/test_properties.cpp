#include <gtest/gtest.h>

#include <cmath>

#include "alexgeo/expr.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/radial.hpp"
#include "alexgeo/spaces.hpp"
#include "alexgeo/tangent.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

// Cross-module invariants on randomly generated inputs.

namespace {

SpacePtr random_space(Gen& g) {
  switch (g.integer(0, 4)) {
    case 0: return make_cone(g.uniform(0.5, 2 * kPi));
    case 1: return make_spindle(g.uniform(0.5, 2 * kPi));
    case 2: {
      const double w = g.uniform(0.5, 2), h = g.uniform(0.5, 2);
      return make_polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
    }
    case 3: return make_cap(g.uniform(0.3, kPi / 2));
    default: return make_plane();
  }
}

}  // namespace

TEST(Properties, ShootAndDistanceAgree) {
  Gen g(91);
  for (int k = 0; k < 40; ++k) {
    auto S = random_space(g);
    for (int i = 0; i < 25; ++i) {
      const Point p = g.point(*S);
      const Point q = g.point(*S);
      const auto dirs = S->directions_to(p, q);
      if (dirs.angles.empty()) continue;
      const double d = S->distance(p, q);
      const auto shot = S->shoot(p, dirs.angles.front(), d);
      EXPECT_NEAR(S->distance(shot.end, q), 0, 1e-8) << S->name();
    }
  }
}

TEST(Properties, CanonicalIsIdempotent) {
  Gen g(92);
  for (int k = 0; k < 40; ++k) {
    auto S = random_space(g);
    for (int i = 0; i < 25; ++i) {
      const Point p = g.point(*S);
      EXPECT_EQ(S->distance(S->canonical(p), p), 0.0) << S->name();
    }
  }
}

TEST(Properties, DifferentialIsOneLipschitzOnSigma) {
  Gen g(93);
  for (int k = 0; k < 30; ++k) {
    auto S = random_space(g);
    const Point p = g.point(*S), q = g.point(*S);
    if (S->distance(p, q) < 1e-3) continue;
    const DirectionalFn d = differential(dist(q), *S, p);
    const auto grid = d.sigma.grid(90);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      EXPECT_LE(std::abs(d(grid[i + 1]) - d(grid[i])), d.sigma.arcdist(grid[i], grid[i + 1]) + 1e-9) << S->name();
  }
}

TEST(Properties, GradientNormBoundedByLipschitzConstant) {
  Gen g(94);
  for (int k = 0; k < 30; ++k) {
    auto S = random_space(g);
    const Point p = g.point(*S);
    const ExprPtr f = sum({dist(g.point(*S)), scaled(0.5, dist(g.point(*S)))});
    EXPECT_LE(gradient(f, *S, p).norm, 1.5 + 1e-9) << S->name();
  }
}

TEST(Properties, CheckerAcceptsGeodesics) {
  Gen g(95);
  for (int k = 0; k < 15; ++k) {
    auto S = random_space(g);
    if (S->kappa() > 0) continue;
    const Point p = g.point(*S), q = g.point(*S);
    if (S->distance(p, q) < 0.2) continue;
    const auto c = geodesic(S, p, q, 100);
    QGCheckOptions qo;
    qo.n_probes = 8;
    EXPECT_TRUE(check_quasigeodesic(S, c, qo).pass()) << S->name();
  }
}

TEST(Properties, ModelComparisonOfRealTriangles) {
  // Curvature >= kappa: the sum of comparison angles of a triangle with the
  // apex as a vertex never exceeds the angle there.
  Gen g(96);
  for (int k = 0; k < 20; ++k) {
    const double th = g.uniform(0.5, 2 * kPi);
    auto C = make_cone(th);
    const Point o = PolarPoint{0, 0};
    for (int i = 0; i < 20; ++i) {
      const Point a = g.point(*C), b = g.point(*C);
      const double oa = C->distance(o, a), ob = C->distance(o, b), ab = C->distance(a, b);
      if (oa < 1e-6 || ob < 1e-6) continue;
      const double apex = C->sigma(o).arcdist(std::get<PolarPoint>(a).phi, std::get<PolarPoint>(b).phi);
      EXPECT_GE(std::min(apex, kPi) + 1e-9, comparison_angle(0, oa, ab, ob));
    }
  }
}
