#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "alexgeo/errors.hpp"
#include "alexgeo/model_plane.hpp"
#include "support.hpp"

using namespace alexgeo;
using alexgeo::testing::Gen;

namespace {

// Independent model: place the hinge in ambient coordinates (plane, unit
// sphere, hyperboloid) and measure the third side there.
double ambient_side(double kappa, double a, double c, double beta) {
  if (kappa == 0) {
    const double x = c * std::cos(beta) - a, y = c * std::sin(beta);
    return std::hypot(x, y);
  }
  if (kappa > 0) {
    const std::array<double, 3> A{std::sin(a), 0, std::cos(a)};
    const std::array<double, 3> C{std::sin(c) * std::cos(beta), std::sin(c) * std::sin(beta), std::cos(c)};
    const double dot = A[0] * C[0] + A[1] * C[1] + A[2] * C[2];
    return std::acos(std::clamp(dot, -1.0, 1.0));
  }
  const std::array<double, 3> A{std::sinh(a), 0, std::cosh(a)};
  const std::array<double, 3> C{std::sinh(c) * std::cos(beta), std::sinh(c) * std::sin(beta), std::cosh(c)};
  const double lorentz = A[2] * C[2] - A[0] * C[0] - A[1] * C[1];
  return std::acosh(std::max(1.0, lorentz));
}

std::vector<std::pair<double, double>> sample_polyline(const std::vector<std::array<double, 2>>& pts, double dt) {
  std::vector<std::pair<double, double>> t_r;
  double t = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = std::hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]);
    const int n = static_cast<int>(std::ceil(len / dt));
    for (int k = 0; k < n; ++k) {
      const double s = static_cast<double>(k) / n;
      const double x = pts[i][0] + s * (pts[i + 1][0] - pts[i][0]);
      const double y = pts[i][1] + s * (pts[i + 1][1] - pts[i][1]);
      t_r.emplace_back(t + s * len, std::hypot(x, y));
    }
    t += len;
  }
  t_r.emplace_back(t, std::hypot(pts.back()[0], pts.back()[1]));
  return t_r;
}

}  // namespace

TEST(ModelScalars, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(rho(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(sigma(0, 5), 5.0);
  EXPECT_DOUBLE_EQ(theta(0, 3), 3.0);
  EXPECT_NEAR(rho(1, kPi), 2.0, 1e-15);
  EXPECT_NEAR(theta(-1, std::log(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(sigma(1, kPi / 2), 1.0, 1e-15);
  EXPECT_NEAR(sigma(-1, 1.0), std::sinh(1.0), 1e-15);
}

TEST(ModelScalars, RhoSolvesItsOde) {
  // rho'' = 1 - kappa rho, rho(0) = rho'(0) = 0.
  for (double k : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
    const double h = 1e-4;
    for (double x : {0.1, 0.5, 1.0}) {
      const double second = (rho(k, x + h) - 2 * rho(k, x) + rho(k, x - h)) / (h * h);
      EXPECT_NEAR(second, 1 - k * rho(k, x), 1e-6) << "kappa " << k << " x " << x;
    }
    EXPECT_EQ(rho(k, 0), 0.0);
  }
}

TEST(ModelScalars, StableNearZero) {
  for (double k : {-1.0, 1.0}) {
    EXPECT_NEAR(rho(k, 1e-9) / 5e-19, 1.0, 1e-12);
    EXPECT_GT(rho(k, 1e-9), 0);
  }
}

TEST(ModelScalars, NonFiniteInputRejected) {
  EXPECT_THROW(rho(0, std::nan("")), DomainError);
  EXPECT_THROW(sigma(1, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(ComparisonAngle, Examples) {
  EXPECT_NEAR(comparison_angle(0, 1, 1, 1), kPi / 3, 1e-15);
  EXPECT_EQ(comparison_angle(0, 1, 1, 3), 0.0);
  EXPECT_EQ(comparison_angle(0, 3, 1, 1), 0.0);
  EXPECT_NEAR(comparison_angle(1, kPi / 2, kPi / 2, kPi / 2), kPi / 2, 1e-15);
}

TEST(ModelSide, Examples) {
  EXPECT_NEAR(model_side(0, 3, 4, kPi / 2), 5.0, 1e-14);
  EXPECT_NEAR(model_side(0, 2.5, 1, 0), 1.5, 1e-14);
  EXPECT_NEAR(model_side(1, kPi / 2, kPi / 2, kPi / 2), kPi / 2, 1e-15);
  EXPECT_THROW(model_side(1, kPi, 1, 0.3), DomainError);
}

TEST(ModelSide, MatchesAmbientModels) {
  Gen g(11);
  for (double k : {-1.0, 0.0, 1.0}) {
    for (int i = 0; i < 1000; ++i) {
      const double cap = k > 0 ? kPi / 2 : 3.0;
      const double a = g.uniform(0.01, cap), c = g.uniform(0.01, cap), beta = g.uniform(0, kPi);
      EXPECT_NEAR(model_side(k, a, c, beta), ambient_side(k, a, c, beta), 1e-9);
    }
  }
}

TEST(ComparisonAngle, RoundTripThroughModelSide) {
  Gen g(12);
  for (double k : {-1.0, 0.0, 1.0}) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const double cap = k > 0 ? kPi / 2 : 3.0;
      const double a = g.uniform(0.05, cap), c = g.uniform(0.05, cap), beta = g.uniform(0.01, kPi - 0.01);
      const double b = model_side(k, a, c, beta);
      worst = std::max(worst, std::abs(comparison_angle(k, a, b, c) - beta));
    }
    EXPECT_LT(worst, 1e-9) << "kappa " << k;
  }
}

TEST(ComparisonAngle, NonDecreasingInOppositeSide) {
  Gen g(13);
  for (double k : {-1.0, 0.0, 1.0}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = g.uniform(0.1, 1.2), c = g.uniform(0.1, 1.2);
      const double lo = std::abs(a - c), hi = a + c;
      double b1 = g.uniform(lo, hi), b2 = g.uniform(lo, hi);
      if (b1 > b2) std::swap(b1, b2);
      EXPECT_LE(comparison_angle(k, a, b1, c), comparison_angle(k, a, b2, c) + 1e-12);
    }
  }
}

TEST(ComparisonAngle, ScalesWithCurvature) {
  // kappa = 4 on sides s equals kappa = 1 on sides 2s.
  Gen g(14);
  for (int i = 0; i < 200; ++i) {
    const double a = g.uniform(0.05, 0.7), c = g.uniform(0.05, 0.7), beta = g.uniform(0.1, 3.0);
    const double b = model_side(4, a, c, beta);
    EXPECT_NEAR(b, model_side(1, 2 * a, 2 * c, beta) / 2, 1e-12);
  }
}

TEST(Develop, ConstantRadiusIsConvexCircle) {
  std::vector<std::pair<double, double>> t_r;
  for (int i = 0; i <= 200; ++i) t_r.emplace_back(i * 0.01, 1.5);
  const auto d = develop_curve(0, t_r);
  EXPECT_TRUE(d.convex);
  for (const auto& s : d.samples) EXPECT_NEAR(s.r, 1.5, 1e-15);
  // Chord length dt on a circle of radius R subtends 2 asin(dt / 2R).
  EXPECT_NEAR(d.samples.back().phi - d.samples.front().phi, 200 * 2 * std::asin(0.01 / 3), 1e-10);
}

TEST(Develop, SegmentDevelopsToItself) {
  const auto t_r = sample_polyline({{{-1, 0.7}}, {{2, 0.7}}}, 0.01);
  const auto d = develop_curve(0, t_r);
  EXPECT_TRUE(d.convex);
  // The development may be mirrored: phi runs opposite to the polar angle.
  const double sign = d.samples.back().phi > d.samples.front().phi ? -1 : 1;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const double y = d.samples[i].r * std::sin(sign * (d.samples[i].phi - d.samples[0].phi) + std::atan2(0.7, -1));
    EXPECT_NEAR(std::abs(y), 0.7, 1e-9);
  }
  for (double turn : d.turns)
    if (!std::isnan(turn)) EXPECT_NEAR(turn, 0, 1e-9);
  EXPECT_LT(development_speed_defect(d), 1e-12);
}

TEST(Develop, CornerAwayFromBaseIsNotConvex) {
  EXPECT_FALSE(develop_curve(0, sample_polyline({{{-1, 1}}, {{0, 1}}, {{1, 1.2}}}, 0.01)).convex);
  EXPECT_TRUE(develop_curve(0, sample_polyline({{{-1, 1}}, {{0, 1}}, {{1, 0.8}}}, 0.01)).convex);
}

TEST(Develop, SphericalCircleAboutBase) {
  // Latitude circle at distance R: speed 1 in the sphere, convex towards o.
  std::vector<std::pair<double, double>> t_r;
  for (int i = 0; i <= 300; ++i) t_r.emplace_back(i * 0.01, 1.0);
  const auto d = develop_curve(1, t_r);
  EXPECT_TRUE(d.convex);
  EXPECT_LT(development_speed_defect(d), 1e-9);
}

TEST(Develop, PassThroughBaseSplits) {
  const auto t_r = sample_polyline({{{-1, 0}}, {{1, 0}}}, 0.01);
  const auto d = develop_curve(0, t_r);
  EXPECT_FALSE(d.splits.empty());
  EXPECT_TRUE(d.convex);
}

TEST(Barrier, ModelSolutionHasZeroDefect) {
  Gen g(15);
  for (double k : {-1.0, 0.0, 1.0}) {
    for (int i = 0; i < 100; ++i) {
      const double a = g.uniform(-1, 1);
      // u = a rho_k(t - s) + A cos-type homogeneous part solves u'' = a - k u.
      const double s = g.uniform(-0.5, 0.5);
      auto u = [&](double t) { return a * rho(k, t - s); };
      const double t0 = g.uniform(0, 0.3), t1 = t0 + g.uniform(0.01, 0.2), t2 = t1 + g.uniform(0.01, 0.2);
      EXPECT_NEAR(barrier_defect(k, a, t0, t1, t2, u(t0), u(t1), u(t2)), 0, 1e-8);
    }
  }
}

TEST(Barrier, SignConvention) {
  // u = t^2 has u'' = 2: a violation of u'' <= 1, fine for u'' <= 3.
  auto u = [](double t) { return t * t; };
  EXPECT_NEAR(barrier_defect(0, 1, 0, 0.1, 0.2, u(0), u(0.1), u(0.2)), 1, 1e-9);
  EXPECT_NEAR(barrier_defect(0, 3, 0, 0.1, 0.2, u(0), u(0.1), u(0.2)), -1, 1e-9);
}
