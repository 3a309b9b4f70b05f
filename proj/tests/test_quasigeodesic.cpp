#include <gtest/gtest.h>

#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/spaces.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

CurveSample sample(double t, const Point& p, double left, double right, double angle) {
  CurveSample s;
  s.t = t;
  s.p = p;
  s.has_left = left > 0;
  s.has_right = right > 0;
  s.left = {left, angle + kPi, {}};
  s.right = {right, angle, {}};
  return s;
}

}  // namespace

TEST(Trace, WithoutVertexHitsIsAGeodesic) {
  auto P = make_plane();
  const auto c = trace_quasigeodesic(P, PolarPoint{1, 0}, 2.0, 3.0);
  EXPECT_EQ(c.count(EventKind::vertex), 0u);
  EXPECT_NEAR(P->distance(c.samples.front().p, c.samples.back().p), 3.0, 1e-12);
  EXPECT_NEAR(c.length(), 3.0, 1e-12);
}

TEST(Trace, ConeApexEqualSplit) {
  auto C = make_cone(3 * kPi / 2);
  // From (1, 0) towards the apex; it leaves at phi = 3pi/4.
  const auto c = trace_quasigeodesic(C, PolarPoint{1, 0}, kPi, 2.0);
  EXPECT_EQ(c.count(EventKind::vertex), 1u);
  const auto end = std::get<PolarPoint>(c.samples.back().p);
  EXPECT_NEAR(end.r, 1.0, 1e-12);
  EXPECT_NEAR(end.phi, 3 * kPi / 4, 1e-12);
}

TEST(Trace, PassesCheckerOnPolyhedra) {
  auto T = make_regular_tetrahedron();
  Gen g(71);
  for (int i = 0; i < 6; ++i) {
    const Point p = g.point(*T);
    const auto c = trace_quasigeodesic(T, p, g.uniform(0, 2 * kPi), 4.0);
    const auto r = check_quasigeodesic(T, c);
    EXPECT_TRUE(r.pass()) << "turn " << r.min_turn << " barrier " << r.worst_barrier << " speed " << r.speed_defect;
    EXPECT_LT(std::abs(entropy(c).total), 1e-9);
  }
}

TEST(Trace, ThroughTetrahedronVertices) {
  auto T = make_regular_tetrahedron();
  auto M = std::dynamic_pointer_cast<const PolyhedralSurface>(T);
  // Aim at vertex 0 from the centroid of the opposite face.
  const Point p = T->canonical(MeshPoint{3, {1.0 / 3, 1.0 / 3, 1.0 / 3}});
  const double xi = T->directions_to(p, M->vertex_point(0)).angles.front();
  const auto c = trace_quasigeodesic(T, p, xi, 3.0);
  EXPECT_GE(c.count(EventKind::vertex), 1u);
  QGCheckOptions qo;
  qo.tol = 1e-6;
  EXPECT_TRUE(check_quasigeodesic(T, c, qo).pass());
}

TEST(Checker, PlaneGeodesicPassesWithTinyMargins) {
  auto P = make_plane();
  const auto c = geodesic(P, PolarPoint{1, 0}, PolarPoint{2, 2}, 200);
  const auto r = check_quasigeodesic(P, c);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.min_turn, -1e-10);
  EXPECT_LT(r.speed_defect, 1e-12);
}

TEST(Checker, PlanarCornerFails) {
  auto P = make_plane();
  const auto c = path_curve(P, {PolarPoint{0, 0}, PolarPoint{1, 0}, PolarPoint{std::sqrt(2.0), kPi / 4}}, 0.01);
  EXPECT_FALSE(check_quasigeodesic(P, c).pass());
}

TEST(Checker, SquareBoundaryPathPasses) {
  auto S = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto c = path_curve(S, {PlanarPoint{0.5, 0}, PlanarPoint{1, 0}, PlanarPoint{1, 1}, PlanarPoint{0.3, 1}}, 0.01);
  QGCheckOptions qo;
  qo.tol = 1e-6;
  EXPECT_TRUE(check_quasigeodesic(S, c, qo).pass());
}

TEST(Checker, InitialAngleBoundsComparisonAngle) {
  // angle(up to p, gamma+(0)) >= comparison angle (|gamma(0) p|, |gamma(t) p|, t).
  auto C = make_cone(3 * kPi / 2);
  const auto c = trace_quasigeodesic(C, PolarPoint{1, 0}, kPi + 0.1, 3.0);
  Gen g(72);
  const Point g0 = c.samples.front().p;
  const Sigma sg = C->sigma(g0);
  for (int i = 0; i < 20; ++i) {
    const Point p = g.point(*C);
    const double a = C->distance(g0, p);
    if (a < 1e-3) continue;
    const double angle = sg.arcdist(C->directions_to(g0, p).angles.front(), c.samples.front().right.angle);
    for (std::size_t k = 1; k < c.samples.size(); k += 10) {
      const double t = c.samples[k].t;
      EXPECT_GE(angle + 1e-6, comparison_angle(0, a, C->distance(c.samples[k].p, p), t));
    }
  }
}

TEST(Entropy, GeodesicHasNone) {
  auto P = make_plane();
  EXPECT_EQ(entropy(geodesic(P, PolarPoint{0, 0}, PolarPoint{1, 1}, 10)).total, 0.0);
}

TEST(Entropy, HalvingSpeedJoint) {
  CurveRecord c;
  c.space = make_plane();
  c.samples = {sample(0, PolarPoint{0, 0}, 0, 1, 0), sample(1, PolarPoint{1, 0}, 1, 0.5, 0),
               sample(3, PolarPoint{2, 0}, 0.5, 0, 0)};
  const auto e = entropy(c);
  ASSERT_EQ(e.atoms.size(), 1u);
  EXPECT_NEAR(e.atoms[0].jump, std::log(0.5), 1e-15);
  EXPECT_NEAR(e.total, std::log(0.5), 1e-15);
}

TEST(Entropy, MissingTangentIsAnError) {
  CurveRecord c;
  c.space = make_plane();
  c.samples = {sample(0, PolarPoint{0, 0}, 0, 1, 0), sample(1, PolarPoint{1, 0}, 0, 1, 0),
               sample(2, PolarPoint{2, 0}, 1, 0, 0)};
  EXPECT_THROW(entropy(c), DomainError);
}

TEST(Ladder, ConvexCurvesAreOneLipschitz) {
  auto C = make_cone(3 * kPi / 2);
  for (double eps : {0.1, 0.05}) {
    const auto c = build_convex_curve(C, PolarPoint{1, 0}, kPi + 0.05, eps, 2.0);
    for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
      const double dt = c.samples[i + 1].t - c.samples[i].t;
      if (dt <= 0) continue;
      EXPECT_LE(C->distance(c.samples[i].p, c.samples[i + 1].p), dt * (1 + 1e-9));
    }
  }
}

TEST(Ladder, ConvexCurveEndpointsConverge) {
  auto C = make_cone(3 * kPi / 2);
  std::vector<Point> ends;
  for (double eps : {0.1, 0.05, 0.025}) ends.push_back(build_convex_curve(C, PolarPoint{1, 0}, kPi, eps, 2.0).samples.back().p);
  EXPECT_LE(C->distance(ends[1], ends[2]), C->distance(ends[0], ends[1]) + 1e-9);
}

TEST(Ladder, PrequasigeodesicSpeedsStayInBand) {
  auto C = make_cone(3 * kPi / 2);
  const double eps = 0.05;
  const auto q = build_prequasigeodesic(C, PolarPoint{1, 0}, kPi + 0.05, eps, 2.0);
  ASSERT_FALSE(q.curve.samples.empty());
  for (const auto& a : q.entropy.atoms) EXPECT_LE(a.jump, 1e-12);
  for (const auto& s : q.curve.samples)
    if (s.has_right) EXPECT_LE(s.right.norm, 1 + 1e-12);
}
