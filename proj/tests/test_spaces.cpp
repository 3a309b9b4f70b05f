#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "alexgeo/errors.hpp"
#include "alexgeo/curve.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/spaces.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::data_file;
using alexgeo::testing::Gen;

namespace {

SpacePtr unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

SpacePtr unit_cube() {
  MeshInput in;
  in.coords = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  in.triangles = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                  {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  return make_mesh(in);
}

std::vector<SpacePtr> exact_spaces() {
  return {make_plane(), make_cone(kPi / 2), make_cone(kPi), make_cone(3 * kPi / 2),
          make_spindle(kPi), make_spindle(2 * kPi), unit_square(),
          make_polygon({{0, 0}, {2, 0}, {0.5, 1.5}}), make_cap(1.0)};
}

// Angle at p between the first minimizing directions to q and r.
double hinge_angle(const Space& S, const Point& p, const Point& q, const Point& r) {
  const auto dq = S.directions_to(p, q), dr = S.directions_to(p, r);
  if (dq.angles.empty() || dr.angles.empty()) return std::nan("");
  return S.sigma(p).arcdist(dq.angles.front(), dr.angles.front());
}

}  // namespace

TEST(Spaces, ConeDistances) {
  EXPECT_NEAR(make_cone(2 * kPi)->distance(PolarPoint{1, 0}, PolarPoint{1, kPi}), 2.0, 1e-15);
  EXPECT_NEAR(make_cone(kPi)->distance(PolarPoint{1, 0}, PolarPoint{1, kPi / 2}), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(make_cone(3 * kPi / 2)->distance(PolarPoint{1, 0}, PolarPoint{1, 5 * kPi / 4}),
              2 * std::sin(kPi / 8), 1e-15);
  // Angular gap above pi: the geodesic runs through the apex.
  EXPECT_NEAR(make_cone(2 * kPi)->distance(PolarPoint{1, 0}, PolarPoint{2, kPi}), 3.0, 1e-15);
}

TEST(Spaces, SpindleDistanceIsSphericalOnTheSphere) {
  auto S = make_spindle(2 * kPi);
  Gen g(21);
  for (int i = 0; i < 200; ++i) {
    const auto p = std::get<PolarPoint>(g.point(*S)), q = std::get<PolarPoint>(g.point(*S));
    const double dot = std::sin(p.r) * std::sin(q.r) * std::cos(p.phi - q.phi) + std::cos(p.r) * std::cos(q.r);
    EXPECT_NEAR(S->distance(p, q), std::acos(std::clamp(dot, -1.0, 1.0)), 1e-9);
  }
}

TEST(Spaces, LoadFromJson) {
  auto C = load_space(R"({"type":"cone","total_angle":4.712389})");
  EXPECT_EQ(C->kind(), SpaceKind::cone);
  EXPECT_NEAR(cone_angle(*C, PolarPoint{0, 0}), 4.712389, 1e-12);
  auto Q = load_space(R"({"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  EXPECT_TRUE(Q->has_boundary());
  EXPECT_EQ(Q->singular_points().size(), 4u);
  EXPECT_NEAR(load_space(R"({"type":"cone","total_angle":"3pi/2"})")
                  ->distance(parse_point(*C, "1,0"), parse_point(*C, "1,5pi/4")),
              0.765367, 5e-7);
}

TEST(Spaces, TetrahedronConeAngles) {
  auto T = make_regular_tetrahedron();
  const auto sing = T->singular_points();
  ASSERT_EQ(sing.size(), 4u);
  for (const auto& s : sing) {
    EXPECT_NEAR(s.angle, kPi, 1e-12);
    EXPECT_NEAR(T->sigma(s.where).length, kPi, 1e-12);
  }
}

TEST(Spaces, TetrahedronOppositeEdgeMidpoints) {
  // Unfolding two faces across the middle edge gives a straight segment of length 1.
  auto T = load_space_file(data_file("tetra.json"));
  auto mesh = std::dynamic_pointer_cast<const PolyhedralSurface>(T);
  ASSERT_TRUE(mesh);
  const double edge = std::sqrt(8.0);
  const Point m01 = T->canonical(MeshPoint{0, {0.5, 0.5, 0}});
  const Point m23 = T->canonical(MeshPoint{3, {0, 0.5, 0.5}});
  const auto d = T->certified_distance(m01, m23);
  // Face 3 = (1,3,2): its vertices 3 and 2 span the edge opposite to 01.
  EXPECT_NEAR(d.value, edge, 1e-9);
  EXPECT_LE(d.value, d.upper + 1e-12);
}

TEST(Spaces, SameFaceDistanceIsChord) {
  auto T = make_regular_tetrahedron();
  auto mesh = std::dynamic_pointer_cast<const PolyhedralSurface>(T);
  Gen g(22);
  for (int i = 0; i < 100; ++i) {
    const int f = g.integer(0, 3);
    double a = g.uniform(0, 1), b = g.uniform(0, 1 - a);
    const MeshPoint p{f, {a, b, 1 - a - b}};
    a = g.uniform(0, 1), b = g.uniform(0, 1 - a);
    const MeshPoint q{f, {a, b, 1 - a - b}};
    const auto P = mesh->position3d(p), Q = mesh->position3d(q);
    const double chord = std::hypot(P[0] - Q[0], P[1] - Q[1], P[2] - Q[2]);
    EXPECT_NEAR(T->distance(p, q), chord, 1e-9);
  }
}

TEST(Spaces, MeshDistanceAboveAmbientChord) {
  auto C = unit_cube();
  auto mesh = std::dynamic_pointer_cast<const PolyhedralSurface>(C);
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    const Point p = g.point(*C), q = g.point(*C);
    const auto P = mesh->position3d(p), Q = mesh->position3d(q);
    const auto d = C->certified_distance(p, q);
    EXPECT_GE(d.value + 1e-9, std::hypot(P[0] - Q[0], P[1] - Q[1], P[2] - Q[2]));
    EXPECT_LE(d.value, d.upper + 1e-9);
  }
  for (const auto& s : C->singular_points()) EXPECT_NEAR(s.angle, 3 * kPi / 2, 1e-12);
}

TEST(Spaces, CubeOppositeCorners) {
  // Unfold two faces: the corner-to-corner geodesic has length sqrt(5).
  auto C = unit_cube();
  auto mesh = std::dynamic_pointer_cast<const PolyhedralSurface>(C);
  EXPECT_NEAR(C->distance(mesh->vertex_point(0), mesh->vertex_point(6)), std::sqrt(5.0), 1e-9);
}

TEST(Spaces, MetricAxioms) {
  auto spaces = exact_spaces();
  spaces.push_back(make_regular_tetrahedron());
  for (const auto& S : spaces) {
    Gen g(24);
    const int n = S->kind() == SpaceKind::mesh ? 150 : 1000;
    for (int i = 0; i < n; ++i) {
      const Point a = g.point(*S), b = g.point(*S), c = g.point(*S);
      const double ab = S->distance(a, b), bc = S->distance(b, c), ac = S->distance(a, c);
      EXPECT_NEAR(ab, S->distance(b, a), 1e-9) << S->name();
      EXPECT_LE(ac, ab + bc + 1e-9) << S->name();
      EXPECT_NEAR(S->distance(a, a), 0, 1e-12) << S->name();
      EXPECT_GE(ab, 0);
    }
  }
}

TEST(Spaces, ToponogovHingeComparison) {
  for (const auto& S : exact_spaces()) {
    Gen g(25);
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
      const Point p = g.point(*S), q = g.point(*S), r = g.point(*S);
      const double pq = S->distance(p, q), pr = S->distance(p, r), qr = S->distance(q, r);
      if (pq < 1e-3 || pr < 1e-3) continue;
      if (S->kappa() > 0 && pq + pr + qr >= 2 * kPi - 1e-6) continue;
      const double angle = hinge_angle(*S, p, q, r);
      if (std::isnan(angle)) continue;
      EXPECT_GE(angle + 1e-6, comparison_angle(S->kappa(), pq, qr, pr)) << S->name();
      ++tested;
    }
    EXPECT_GT(tested, 400) << S->name();
  }
}

TEST(Spaces, GeodesicLengthMatchesDistance) {
  auto spaces = exact_spaces();
  spaces.push_back(make_regular_tetrahedron());
  for (const auto& S : spaces) {
    Gen g(26);
    for (int i = 0; i < 30; ++i) {
      const Point p = g.point(*S), q = g.point(*S);
      const auto d = S->certified_distance(p, q);
      const auto c = geodesic(S, p, q, 32);
      EXPECT_NEAR(c.length(), d.value, 1e-9 + d.error) << S->name();
      EXPECT_NEAR(S->distance(c.samples.back().p, q), 0, 1e-8) << S->name();
    }
  }
}

TEST(Spaces, LogMapOnThePlane) {
  auto P = make_plane();
  const auto v = log_map(*P, PolarPoint{0, 0}, PolarPoint{3, 0.4});
  EXPECT_NEAR(v.norm, 3, 1e-15);
  EXPECT_NEAR(v.angle, 0.4, 1e-15);
}

TEST(Spaces, SquareInteriorToVertexSingleChord) {
  auto Q = unit_square();
  const auto d = Q->directions_to(PlanarPoint{0.3, 0.6}, PlanarPoint{1, 1});
  EXPECT_EQ(d.angles.size(), 1u);
  EXPECT_NEAR(d.angles[0], std::atan2(0.4, 0.7), 1e-12);
}

TEST(Spaces, ConeSymmetricPairHasTwoDirections) {
  // On Cone(pi) the angular gap pi/2 is the same both ways round.
  auto H = make_cone(kPi);
  EXPECT_EQ(H->directions_to(PolarPoint{1, 0}, PolarPoint{1, kPi / 2}).angles.size(), 2u);
}

TEST(Spaces, SigmaLengths) {
  EXPECT_NEAR(unit_square()->sigma(PlanarPoint{0.5, 0}).length, kPi, 1e-12);
  EXPECT_FALSE(unit_square()->sigma(PlanarPoint{0.5, 0}).closed);
  EXPECT_NEAR(unit_square()->sigma(PlanarPoint{0, 0}).length, kPi / 2, 1e-12);
  EXPECT_NEAR(unit_square()->sigma(PlanarPoint{0.4, 0.3}).length, 2 * kPi, 1e-12);
  for (double th : {kPi / 2, 4.0, 2 * kPi}) EXPECT_NEAR(make_cone(th)->sigma(PolarPoint{0, 0}).length, th, 1e-12);
  EXPECT_NEAR(make_cap(1.0)->sigma(PolarPoint{1.0, 0.2}).length, kPi, 1e-12);
}

TEST(Spaces, DoubledSquare) {
  const Doubling D = build_doubling(unit_square());
  EXPECT_FALSE(D.space->has_boundary());
  const auto sing = D.space->singular_points();
  ASSERT_EQ(sing.size(), 4u);
  for (const auto& s : sing) EXPECT_NEAR(s.angle, kPi, 1e-12);
  // Mirrored points project to the same base point.
  const PlanarPoint x{0.3, 0.7};
  const Point up = D.lift(x, true), down = D.lift(x, false);
  EXPECT_GT(D.space->distance(up, down), 0.5);
  const auto a = std::get<PlanarPoint>(D.project(up)), b = std::get<PlanarPoint>(D.project(down));
  EXPECT_NEAR(a.x, b.x, 1e-12);
  EXPECT_NEAR(a.y, b.y, 1e-12);
  // Through the boundary: distance between the sheets equals twice the way out.
  EXPECT_NEAR(D.space->distance(up, down), 0.6, 1e-9);
}

TEST(Spaces, DoubledHemisphereIsSphere) {
  const Doubling D = build_doubling(make_cap(kPi / 2));
  EXPECT_EQ(D.space->kind(), SpaceKind::spindle);
  EXPECT_TRUE(D.space->singular_points().empty());
  EXPECT_THROW(build_doubling(make_cap(1.0)), DomainError);
}

TEST(Spaces, CurvatureBoundViolation) {
  // Seven unit equilateral triangles around a hub: angle 7pi/3 > 2pi.
  const int n = 7;
  MeshInput e;
  for (int i = 0; i < n; ++i) {
    e.triangles.push_back({0, 1 + i, 1 + (i + 1) % n});
    e.triangles.push_back({n + 1, 1 + (i + 1) % n, 1 + i});
    e.edge_lengths.emplace_back(0, 1 + i, 1.0);
    e.edge_lengths.emplace_back(1 + i, 1 + (i + 1) % n, 1.0);
    e.edge_lengths.emplace_back(n + 1, 1 + i, 1.2);
  }
  EXPECT_THROW(make_mesh(e), CurvatureBoundError);
}

TEST(Spaces, MalformedMeshReportsFileAndLine) {
  try {
    load_space_file(data_file("bad_mesh.json"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad_mesh.json:6"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_space(R"({"type":"cone"})"), ParseError);
  EXPECT_THROW(load_space(R"({"type":"torus"})"), ParseError);
  EXPECT_THROW(load_space("{\"type\": \"cone\", "), ParseError);
}

TEST(Spaces, OpenMeshRejected) {
  MeshInput in;
  in.coords = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  in.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}};
  EXPECT_THROW(make_mesh(in), ParseError);
}
