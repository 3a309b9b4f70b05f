#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

namespace {

Doubling double_polygon(const std::shared_ptr<const ConvexPolygon>& P) {
  const auto& v = P->vertices();
  const int n = static_cast<int>(v.size());
  const int top = n, bot = n + 1;
  const auto c = P->centroid();
  auto dist = [](std::array<double, 2> a, std::array<double, 2> b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };
  MeshInput in;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    in.triangles.push_back({top, i, j});
    in.edge_lengths.emplace_back(i, j, dist(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]));
    in.edge_lengths.emplace_back(top, i, dist(c, v[static_cast<std::size_t>(i)]));
    in.edge_lengths.emplace_back(bot, i, dist(c, v[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < n; ++i) in.triangles.push_back({bot, (i + 1) % n, i});
  auto mesh = std::make_shared<PolyhedralSurface>(in);

  std::vector<std::array<double, 2>> planar(v.begin(), v.end());
  planar.push_back(c);
  planar.push_back(c);

  Doubling d;
  d.space = mesh;
  d.base = P;
  d.project = [mesh, planar](const Point& x) -> Point {
    const MeshPoint m = std::get<MeshPoint>(mesh->canonical(x));
    const auto& F = mesh->face(m.face);
    double px = 0, py = 0;
    for (int k = 0; k < 3; ++k) {
      px += m.bary[k] * planar[static_cast<std::size_t>(F.v[k])][0];
      py += m.bary[k] * planar[static_cast<std::size_t>(F.v[k])][1];
    }
    return PlanarPoint{px, py};
  };
  d.lift = [mesh, P, c, n](const Point& x, bool bottom) -> Point {
    const PlanarPoint p = std::get<PlanarPoint>(P->canonical(x));
    const auto& v = P->vertices();
    for (int i = 0; i < n; ++i) {
      const auto& a = v[static_cast<std::size_t>(i)];
      const auto& b = v[static_cast<std::size_t>((i + 1) % n)];
      const double ax = a[0] - c[0], ay = a[1] - c[1], bx = b[0] - c[0], by = b[1] - c[1];
      const double det = ax * by - ay * bx;
      const double px = p.x - c[0], py = p.y - c[1];
      const double s = (px * by - py * bx) / det, t = (ax * py - ay * px) / det;
      if (s < -1e-12 || t < -1e-12 || s + t > 1 + 1e-12) continue;
      MeshPoint m;
      if (!bottom) {
        m = {i, {1 - s - t, s, t}};
      } else {
        m = {n + i, {1 - s - t, t, s}};
      }
      for (double& w : m.bary) w = std::max(w, 0.0);
      const double sum = m.bary[0] + m.bary[1] + m.bary[2];
      for (double& w : m.bary) w /= sum;
      return mesh->canonical(m);
    }
    throw DomainError("point outside polygon");
  };
  return d;
}

}  // namespace

Doubling build_doubling(const SpacePtr& base) {
  if (auto P = std::dynamic_pointer_cast<const ConvexPolygon>(base)) return double_polygon(P);
  if (auto C = std::dynamic_pointer_cast<const SphericalCap>(base)) {
    if (std::abs(C->r0() - 0.5 * kPi) > 1e-12) {
      throw DomainError("doubling of a cap is available for the hemisphere only");
    }
    Doubling d;
    d.space = make_spindle(2 * kPi);
    d.base = C;
    d.project = [](const Point& x) -> Point {
      PolarPoint p = std::get<PolarPoint>(x);
      if (p.r > 0.5 * kPi) p.r = kPi - p.r;
      return p;
    };
    d.lift = [sp = d.space](const Point& x, bool bottom) -> Point {
      PolarPoint p = std::get<PolarPoint>(x);
      if (bottom) p.r = kPi - p.r;
      return sp->canonical(p);
    };
    return d;
  }
  throw DomainError("doubling needs a space with boundary");
}

}  // namespace alexgeo
