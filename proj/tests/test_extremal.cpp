#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "alexgeo/expr.hpp"
#include "alexgeo/extremal.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/spaces.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

SpacePtr unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

bool has_label(const std::vector<ExtremalCandidate>& c, const std::string& prefix) {
  return std::any_of(c.begin(), c.end(), [&](const auto& x) { return x.subset.label.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST(Extremal, SquareBoundaryAndCorners) {
  auto S = unit_square();
  const auto b = verify_extremal(S, boundary_subset());
  EXPECT_TRUE(b.pass());
  EXPECT_LT(b.drift_rate, 1e-6);
  for (const auto& c : {PlanarPoint{0, 0}, PlanarPoint{1, 1}}) EXPECT_TRUE(verify_extremal(S, point_subset(c)).pass());
}

TEST(Extremal, ConeApexBelowPi) {
  EXPECT_TRUE(verify_extremal(make_cone(kPi / 2), point_subset(PolarPoint{0, 0})).pass());
  EXPECT_TRUE(verify_extremal(make_cone(kPi), point_subset(PolarPoint{0, 0})).pass());
  // Apex of a wide cone is not extremal.
  EXPECT_FALSE(verify_extremal(make_cone(3 * kPi / 2), point_subset(PolarPoint{0, 0})).criterion);
}

TEST(Extremal, InteriorSegmentAndPointFail) {
  auto S = unit_square();
  EXPECT_FALSE(verify_extremal(S, edge_path_subset({PlanarPoint{0.2, 0.5}, PlanarPoint{0.8, 0.5}})).pass());
  EXPECT_FALSE(verify_extremal(S, point_subset(PlanarPoint{0.5, 0.5})).pass());
  EXPECT_FALSE(verify_extremal(S, edge_path_subset({PlanarPoint{0, 0}, PlanarPoint{1, 0}})).pass());
}

TEST(Extremal, TrivialSubsets) {
  Subset whole;
  whole.whole = true;
  const auto r = verify_extremal(unit_square(), whole);
  EXPECT_TRUE(r.trivial);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(verify_extremal(unit_square(), Subset{}).pass());
}

TEST(Extremal, DetectOnSquare) {
  const auto c = detect_extremal(unit_square());
  EXPECT_TRUE(has_label(c, "boundary"));
  int corners = 0;
  for (const auto& x : c) {
    EXPECT_TRUE(x.evidence.pass()) << x.subset.label;
    if (x.subset.parts.size() == 1 && x.subset.parts[0].kind == SubsetPart::Kind::point) ++corners;
  }
  EXPECT_EQ(corners, 4);
}

TEST(Extremal, DetectOnTetrahedronAndPlane) {
  const auto t = detect_extremal(make_regular_tetrahedron());
  int points = 0;
  for (const auto& x : t) {
    EXPECT_TRUE(x.evidence.pass()) << x.subset.label;
    points += x.subset.parts.size() == 1 && x.subset.parts[0].kind == SubsetPart::Kind::point;
  }
  EXPECT_EQ(points, 4);
  // The plane only has the trivial ones.
  for (const auto& x : detect_extremal(make_plane())) EXPECT_TRUE(x.evidence.trivial);
}

TEST(Extremal, DetectOnCapFindsBoundary) {
  const auto c = detect_extremal(make_cap(1.0));
  EXPECT_TRUE(has_label(c, "boundary"));
  for (const auto& x : c) EXPECT_TRUE(x.evidence.pass()) << x.subset.label;
}

TEST(Extremal, DistanceHasNoSmallCriticalValues) {
  const auto f = extremal_gradient_floor(unit_square(), boundary_subset(), 0.1);
  EXPECT_GT(f.samples, 0);
  EXPECT_GT(f.floor, 0.5);
  const auto g = extremal_gradient_floor(make_cone(kPi / 2), point_subset(PolarPoint{0, 0}), 0.5);
  EXPECT_GT(g.floor, 0.5);
}

TEST(Extremal, FootPointOnBoundary) {
  auto S = unit_square();
  const auto foot = std::get<PlanarPoint>(foot_point(*S, boundary_subset(), PlanarPoint{0.3, 0.1}));
  EXPECT_NEAR(foot.x, 0.3, 1e-12);
  EXPECT_NEAR(foot.y, 0, 1e-12);
  EXPECT_NEAR(distance_to_subset(*S, boundary_subset(), PlanarPoint{0.3, 0.1}), 0.1, 1e-12);
}

TEST(Extremal, BoundaryGeodesicsAreQuasigeodesics) {
  auto S = make_polygon({{0, 0}, {2, 0}, {1.5, 1}, {0.2, 1.2}});
  const auto c = path_curve(S, {PlanarPoint{1, 0}, PlanarPoint{2, 0}, PlanarPoint{1.5, 1}, PlanarPoint{0.8, 1.1}}, 0.01);
  QGCheckOptions qo;
  qo.tol = 1e-6;
  EXPECT_TRUE(check_quasigeodesic(S, c, qo).pass());
}

TEST(Extremal, BoundaryDistanceConcavity) {
  Gen g(81);
  for (int k = 0; k < 3; ++k) {
    std::vector<double> angles;
    for (;;) {
      angles.clear();
      for (int i = 0; i < 6; ++i) angles.push_back(g.uniform(0, 2 * kPi));
      std::sort(angles.begin(), angles.end());
      double gap = angles.front() + 2 * kPi - angles.back();
      for (int i = 0; i + 1 < 6; ++i) gap = std::max(gap, angles[i + 1] - angles[i]);
      if (gap < kPi - 0.15) break;
    }
    std::vector<std::array<double, 2>> v;
    for (double a : angles) v.push_back({1.5 * std::cos(a), std::sin(a)});
    auto S = make_polygon(v);
    ConcavityOptions co;
    co.n_geodesics = 200;
    EXPECT_TRUE(check_concavity(dist_boundary(*S), *S, 0, Region{PlanarPoint{0, 0}}, co).pass);
  }
  // Cap: sin(r0 - r) is (-f)-concave.
  auto C = make_cap(1.0);
  const ExprPtr db = dist_boundary(*C);
  ScalarField f = [&](const Point& p) { return std::sin(eval(db, *C, p)); };
  ConcavityOptions co;
  co.tol = 1e-8;
  EXPECT_TRUE(check_barrier(f, *C, 0, 1, random_chords(*C, Region{PolarPoint{0, 0}}, 100, 3), co).pass);
}
