#include <gtest/gtest.h>

#include <cmath>

#include "alexgeo/expr.hpp"
#include "alexgeo/flow.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/spaces.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

SpacePtr unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

double end_radius_error(double h) {
  auto P = make_plane();
  FlowOptions o;
  o.h = h;
  const auto c = gradient_curve(scaled(-0.5, dist_sq(PolarPoint{0, 0})), P, PolarPoint{1, 0.3}, 1.0, o);
  return std::abs(std::get<PolarPoint>(c.samples.back().p).r - std::exp(-1.0));
}

}  // namespace

TEST(Flow, PlaneQuadraticContraction) {
  auto P = make_plane();
  const ExprPtr f = scaled(-0.5, dist_sq(PolarPoint{0, 0}));
  FlowOptions o;
  o.h = 1e-3;
  const Point p = PolarPoint{1, 0.3}, q = PolarPoint{0.4, 2.0};
  const auto a = gradient_curve(f, P, p, 1.0, o), b = gradient_curve(f, P, q, 1.0, o);
  EXPECT_NEAR(P->distance(a.samples.back().p, b.samples.back().p), std::exp(-1.0) * P->distance(p, q), 1e-2);
  // Direction is preserved exactly: the flow is radial.
  EXPECT_NEAR(std::get<PolarPoint>(a.samples.back().p).phi, 0.3, 1e-12);
}

TEST(Flow, FirstOrderSelfConvergence) {
  const double e1 = end_radius_error(4e-3), e2 = end_radius_error(2e-3), e3 = end_radius_error(1e-3);
  EXPECT_GE(std::log2(e1 / e2), 0.95);
  EXPECT_GE(std::log2(e2 / e3), 0.95);
  EXPECT_LT(e3, 1e-2);
}

TEST(Flow, LeavesConeApexAtGradientSpeed) {
  auto C = make_cone(3 * kPi / 2);
  const ExprPtr f = dist(PolarPoint{1, 0});
  std::vector<Point> ends;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    FlowOptions o;
    o.h = h;
    const auto c = gradient_curve(f, C, PolarPoint{0, 0}, 0.5, o);
    EXPECT_NEAR(c.samples.front().right.norm, std::sqrt(2.0) / 2, 1e-9);
    ends.push_back(c.samples.back().p);
  }
  const double d1 = C->distance(ends[0], ends[1]), d2 = C->distance(ends[1], ends[2]);
  EXPECT_LE(d2, 0.55 * d1 + 1e-12);
}

TEST(Flow, NonExpandingForConcaveFunctions) {
  auto S = unit_square();
  const ExprPtr f = dist_boundary(*S);
  Gen g(51);
  FlowOptions o;
  o.h = 1e-3;
  for (int i = 0; i < 20; ++i) {
    const Point p = g.point(*S), q = g.point(*S);
    const auto a = gradient_curve(f, S, p, 0.3, o), b = gradient_curve(f, S, q, 0.3, o);
    EXPECT_LE(S->distance(a.samples.back().p, b.samples.back().p), S->distance(p, q) + 1e-9);
  }
}

TEST(Flow, StopsAtCriticalPoint) {
  auto S = unit_square();
  FlowOptions o;
  o.h = 1e-3;
  const auto c = gradient_curve(dist_boundary(*S), S, PlanarPoint{0.45, 0.4}, 2.0, o);
  const auto end = std::get<PlanarPoint>(c.samples.back().p);
  EXPECT_NEAR(end.x, 0.5, 1e-6);
  EXPECT_NEAR(end.y, 0.5, 1e-6);
  bool stopped = false;
  Point stop_point;
  for (const auto& s : c.samples) {
    if (stopped) {
      EXPECT_EQ(S->distance(s.p, stop_point), 0.0);
    } else if (s.has_right && s.right.norm < o.tol_stop) {
      stopped = true;
      stop_point = s.p;
    }
  }
}

TEST(Flow, ConcaveAlongArclength) {
  // f o alpha reparametrized by arclength is lambda-concave (lambda = 0 here).
  // Along the ridges of dist_boundary the broken-geodesic steps zigzag with an
  // amplitude of order h, so arclength is measured on chords spanning many
  // steps and second differences carry an O(h / ds^2) allowance.
  auto S = unit_square();
  const ExprPtr f = dist_boundary(*S);
  FlowOptions o;
  o.h = 1e-3;
  const std::size_t stride = 50;
  Gen g(52);
  for (int i = 0; i < 10; ++i) {
    const auto c = gradient_curve(f, S, g.point(*S), 0.5, o);
    std::vector<double> s{0}, v{eval(f, *S, c.samples[0].p)};
    double min_ds = 1e300;
    for (std::size_t k = stride; k < c.samples.size(); k += stride) {
      const double ds = S->distance(c.samples[k - stride].p, c.samples[k].p);
      if (ds < 1e-9) break;
      min_ds = std::min(min_ds, ds);
      s.push_back(s.back() + ds);
      v.push_back(eval(f, *S, c.samples[k].p));
    }
    const double allowance = 4 * o.h / (min_ds * min_ds);
    for (std::size_t k = 1; k + 1 < s.size(); ++k)
      EXPECT_LE(barrier_defect(0, 0, s[k - 1], s[k], s[k + 1], v[k - 1], v[k], v[k + 1]), allowance);
  }
}

TEST(Flow, DistanceEstimatesOnPlaneAndSquare) {
  FlowOptions o;
  o.h = 1e-3;
  auto P = make_plane();
  const auto r1 = verify_distance_estimates(scaled(-0.5, dist_sq(PolarPoint{0, 0})), P, -1,
                                            {{PolarPoint{1, 0.3}, PolarPoint{0.5, 2}}}, {0, 0.25, 0.5, 1}, o);
  EXPECT_TRUE(r1.pass(1e-2));
  auto S = unit_square();
  const auto r2 = verify_distance_estimates(dist_boundary(*S), S, 0,
                                            {{PlanarPoint{0.2, 0.3}, PlanarPoint{0.7, 0.6}},
                                             {PlanarPoint{0.1, 0.9}, PlanarPoint{0.45, 0.55}}},
                                            {0, 0.1, 0.2, 0.4}, o);
  EXPECT_TRUE(r2.pass(1e-2));
  EXPECT_GT(r2.checks, 0);
}

TEST(Flow, LengthElementZeroShiftIsEquality) {
  auto S = unit_square();
  const auto g0 = geodesic(S, PlanarPoint{0.1, 0.1}, PlanarPoint{0.9, 0.5}, 20);
  FlowOptions o;
  o.h = 1e-3;
  const auto r = length_element_check(dist_boundary(*S), S, 0, g0, [](double) { return 0.0; }, o);
  EXPECT_GT(r.checks, 0);
  EXPECT_NEAR(r.worst_margin, 0, 1e-9);
}

TEST(Flow, LengthElementConstantShiftOnQuadratic) {
  auto P = make_plane();
  const auto g0 = geodesic(P, PolarPoint{1, 0}, PolarPoint{1, 1.5}, 20);
  FlowOptions o;
  o.h = 1e-4;
  const auto r = length_element_check(scaled(-0.5, dist_sq(PolarPoint{0, 0})), P, -1, g0,
                                      [](double) { return 0.3; }, o);
  EXPECT_GE(r.worst_margin, -1e-3);
}

TEST(Flow, LengthElementRandomShifts) {
  auto S = unit_square();
  const auto g0 = geodesic(S, PlanarPoint{0.1, 0.1}, PlanarPoint{0.9, 0.5}, 20);
  Gen g(53);
  FlowOptions o;
  o.h = 1e-3;
  for (int i = 0; i < 5; ++i) {
    const double a = g.uniform(0, 0.3), b = g.uniform(0, 0.3);
    const auto r = length_element_check(dist_boundary(*S), S, 0, g0,
                                        [&](double s) { return a + 0.3 * b * std::sin(3 * s) + 0.1; }, o);
    EXPECT_GE(r.worst_margin, -1e-2);
  }
}

TEST(Flow, SampleTimesAreHitExactly) {
  auto P = make_plane();
  FlowOptions o;
  o.h = 0.03;
  o.sample_times = {0.1, 0.25, 0.7};
  const auto c = gradient_curve(scaled(-0.5, dist_sq(PolarPoint{0, 0})), P, PolarPoint{1, 0}, 1.0, o);
  for (double t : o.sample_times) {
    bool found = false;
    for (const auto& s : c.samples) found |= s.t == t;
    EXPECT_TRUE(found) << t;
  }
}
