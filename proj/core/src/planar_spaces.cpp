#include <algorithm>
#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

namespace {

const PlanarPoint& planar(const Point& p) {
  const auto* a = std::get_if<PlanarPoint>(&p);
  if (!a) throw DomainError("expected planar coordinates [x, y]");
  return *a;
}

const PolarPoint& polar(const Point& p) {
  const auto* a = std::get_if<PolarPoint>(&p);
  if (!a) throw DomainError("expected cap coordinates [r, phi]");
  return *a;
}

struct V3 {
  double x, y, z;
};
double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
V3 cross(V3 a, V3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(V3 a) { return std::sqrt(dot(a, a)); }
V3 sph(double r, double lon) {
  return {std::sin(r) * std::cos(lon), std::sin(r) * std::sin(lon), std::cos(r)};
}
V3 er(double r, double lon) {
  return {std::cos(r) * std::cos(lon), std::cos(r) * std::sin(lon), -std::sin(r)};
}
V3 ep(double lon) { return {-std::sin(lon), std::cos(lon), 0}; }

}  // namespace

// ---------------------------------------------------------------- polygon

ConvexPolygon::ConvexPolygon(std::vector<std::array<double, 2>> vertices)
    : v_(std::move(vertices)) {
  const std::size_t n = v_.size();
  if (n < 3) throw DomainError("polygon needs at least 3 vertices");
  double lo = 0, hi = 0, area = 0;
  for (const auto& p : v_) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw DomainError("non-finite vertex");
    lo = std::min({lo, p[0], p[1]});
    hi = std::max({hi, p[0], p[1]});
  }
  scale_ = std::max(1e-300, hi - lo);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    area += a[0] * b[1] - a[1] * b[0];
  }
  if (area <= 0) throw DomainError("polygon vertices must be counter-clockwise");
  n_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    const auto& c = v_[(i + 2) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double fx = c[0] - b[0], fy = c[1] - b[1];
    const double len = std::hypot(ex, ey);
    if (len <= 1e-12 * scale_) throw DomainError("repeated polygon vertex " + std::to_string(i));
    if (ex * fy - ey * fx <= 1e-12 * scale_ * scale_) {
      throw DomainError("polygon is not strictly convex at vertex " +
                        std::to_string((i + 1) % n));
    }
    n_[i] = {-ey / len, ex / len};
  }
}

std::string ConvexPolygon::name() const { return "polygon(" + std::to_string(v_.size()) + ")"; }

double ConvexPolygon::edge_distance(std::size_t i, double x, double y) const {
  return (x - v_[i][0]) * n_[i][0] + (y - v_[i][1]) * n_[i][1];
}

double ConvexPolygon::boundary_distance(const Point& p0) const {
  const PlanarPoint& p = planar(p0);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v_.size(); ++i) d = std::min(d, edge_distance(i, p.x, p.y));
  return d;
}

bool ConvexPolygon::on_boundary(const Point& p, double tol) const {
  return boundary_distance(p) <= tol * scale_;
}

std::array<double, 2> ConvexPolygon::nearest(double x, double y) const {
  bool inside = true;
  for (std::size_t i = 0; i < v_.size(); ++i) inside = inside && edge_distance(i, x, y) >= 0;
  if (inside) return {x, y};
  std::array<double, 2> best{x, y};
  double bd = std::numeric_limits<double>::infinity();
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    double t = ((x - a[0]) * ex + (y - a[1]) * ey) / (ex * ex + ey * ey);
    t = std::clamp(t, 0.0, 1.0);
    const double px = a[0] + t * ex, py = a[1] + t * ey;
    const double d = std::hypot(px - x, py - y);
    if (d < bd) {
      bd = d;
      best = {px, py};
    }
  }
  return best;
}

Point ConvexPolygon::canonical(const Point& p0) const {
  const PlanarPoint& p = planar(p0);
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("non-finite point");
  const double d = boundary_distance(p);
  if (d < -1e-9 * scale_) {
    throw DomainError("point (" + num(p.x) + ", " + num(p.y) + ") outside polygon");
  }
  if (d < 0) {
    const auto q = nearest(p.x, p.y);
    return PlanarPoint{q[0], q[1]};
  }
  return p;
}

Point ConvexPolygon::project(const Point& p0) const {
  const PlanarPoint& p = planar(p0);
  const auto q = nearest(p.x, p.y);
  return PlanarPoint{q[0], q[1]};
}

double ConvexPolygon::distance(const Point& p0, const Point& q0) const {
  const PlanarPoint& p = planar(p0);
  const PlanarPoint& q = planar(q0);
  return std::hypot(q.x - p.x, q.y - p.y);
}

DirectionSet ConvexPolygon::directions_to(const Point& p0, const Point& q0) const {
  const PlanarPoint& p = planar(p0);
  const PlanarPoint& q = planar(q0);
  DirectionSet out;
  if (q.x == p.x && q.y == p.y) return out;
  out.angles.push_back(wrap_2pi(std::atan2(q.y - p.y, q.x - p.x)));
  return out;
}

double ConvexPolygon::interior_angle(std::size_t i) const {
  const std::size_t n = v_.size();
  const auto& a = v_[i];
  const auto& b = v_[(i + 1) % n];
  const auto& c = v_[(i + n - 1) % n];
  const double ux = b[0] - a[0], uy = b[1] - a[1];
  const double wx = c[0] - a[0], wy = c[1] - a[1];
  return std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
}

Sigma ConvexPolygon::sigma(const Point& p0) const {
  const PlanarPoint& p = planar(p0);
  const std::size_t n = v_.size();
  std::vector<std::size_t> on;
  for (std::size_t i = 0; i < n; ++i) {
    if (edge_distance(i, p.x, p.y) <= 1e-12 * scale_) on.push_back(i);
  }
  auto edge_angle = [&](std::size_t i) {
    const auto& a = v_[i];
    const auto& b = v_[(i + 1) % n];
    return wrap_2pi(std::atan2(b[1] - a[1], b[0] - a[0]));
  };
  if (on.empty()) return Sigma{};
  if (on.size() == 1) return Sigma{kPi, false, edge_angle(on[0])};
  // Corner: edges i-1 and i meet at vertex i.
  std::size_t vtx = on[1];
  if (on[0] == 0 && on.back() == n - 1) vtx = 0;
  return Sigma{interior_angle(vtx), false, edge_angle(vtx)};
}

ShootResult ConvexPolygon::shoot(const Point& p0, double angle, double length) const {
  const PlanarPoint& p = planar(p0);
  ShootResult res;
  const double c = std::cos(angle), s = std::sin(angle);
  res.back = wrap_2pi(angle + kPi);
  if (length <= 0) {
    res.end = p;
    return res;
  }
  double exit = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const double out = -(c * n_[i][0] + s * n_[i][1]);  // outward speed
    if (out <= 1e-15) continue;
    const double d = std::max(0.0, edge_distance(i, p.x, p.y));
    exit = std::min(exit, d / out);
  }
  if (exit < length) {
    res.length = exit;
    res.stop = StopKind::boundary;
  } else {
    res.length = length;
  }
  res.end = canonical(PlanarPoint{p.x + res.length * c, p.y + res.length * s});
  return res;
}

ShootResult ConvexPolygon::advance(const Point& p0, double angle, double length) const {
  const PlanarPoint& p = planar(p0);
  ShootResult res;
  const double x = p.x + length * std::cos(angle), y = p.y + length * std::sin(angle);
  const auto q = nearest(x, y);
  res.end = PlanarPoint{q[0], q[1]};
  res.length = std::hypot(q[0] - p.x, q[1] - p.y);
  if (std::hypot(q[0] - x, q[1] - y) > 1e-15 * scale_) res.stop = StopKind::boundary;
  res.back = res.length > 0 ? wrap_2pi(std::atan2(p.y - q[1], p.x - q[0])) : wrap_2pi(angle + kPi);
  return res;
}

Point ConvexPolygon::random_point(std::mt19937_64& rng) const {
  double x0 = v_[0][0], x1 = x0, y0 = v_[0][1], y1 = y0;
  for (const auto& v : v_) {
    x0 = std::min(x0, v[0]);
    x1 = std::max(x1, v[0]);
    y0 = std::min(y0, v[1]);
    y1 = std::max(y1, v[1]);
  }
  std::uniform_real_distribution<double> X(x0, x1), Y(y0, y1);
  for (;;) {
    PlanarPoint p{X(rng), Y(rng)};
    if (boundary_distance(p) >= 0) return p;
  }
}

std::vector<SingularPoint> ConvexPolygon::singular_points() const {
  std::vector<SingularPoint> out;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    out.push_back({PlanarPoint{v_[i][0], v_[i][1]}, interior_angle(i), true,
                   "corner " + std::to_string(i)});
  }
  return out;
}

double ConvexPolygon::diameter_bound() const {
  double d = 0;
  for (const auto& a : v_)
    for (const auto& b : v_) d = std::max(d, std::hypot(a[0] - b[0], a[1] - b[1]));
  return d;
}

std::array<double, 2> ConvexPolygon::chart(const Point& p0) const {
  const PlanarPoint& p = planar(p0);
  return {p.x, p.y};
}

std::array<double, 2> ConvexPolygon::centroid() const {
  double x = 0, y = 0;
  for (const auto& v : v_) {
    x += v[0];
    y += v[1];
  }
  return {x / static_cast<double>(v_.size()), y / static_cast<double>(v_.size())};
}

// ---------------------------------------------------------------- cap

SphericalCap::SphericalCap(double r0) : r0_(r0) {
  if (!std::isfinite(r0) || r0 <= 0 || r0 > 0.5 * kPi + 1e-12) {
    throw DomainError("cap radius must lie in (0, pi/2]");
  }
  r0_ = std::min(r0, 0.5 * kPi);
}

std::string SphericalCap::name() const { return "cap(" + num(r0_) + ")"; }

Point SphericalCap::canonical(const Point& p0) const {
  PolarPoint p = polar(p0);
  if (!std::isfinite(p.r) || !std::isfinite(p.phi)) throw DomainError("non-finite point");
  if (p.r < -1e-12 || p.r > r0_ + 1e-9) throw DomainError("cap radius " + num(p.r) + " outside [0, r0]");
  if (p.r <= 1e-15) return PolarPoint{0, 0};
  return PolarPoint{std::min(p.r, r0_), wrap_2pi(p.phi)};
}

Point SphericalCap::project(const Point& p0) const {
  PolarPoint p = polar(p0);
  if (p.r <= 1e-15) return PolarPoint{0, 0};
  return PolarPoint{std::clamp(p.r, 0.0, r0_), wrap_2pi(p.phi)};
}

double SphericalCap::boundary_distance(const Point& p) const { return r0_ - polar(p).r; }

bool SphericalCap::on_boundary(const Point& p, double tol) const {
  return boundary_distance(p) <= tol;
}

double SphericalCap::distance(const Point& p0, const Point& q0) const {
  const PolarPoint& p = polar(p0);
  const PolarPoint& q = polar(q0);
  const V3 a = sph(p.r, p.phi), b = sph(q.r, q.phi);
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

DirectionSet SphericalCap::directions_to(const Point& p0, const Point& q0) const {
  const PolarPoint p = polar(canonical(p0)), q = polar(canonical(q0));
  DirectionSet out;
  if (distance(p, q) <= 0) return out;
  if (p.r == 0) {
    out.angles.push_back(q.phi);
    return out;
  }
  if (q.r == 0) {
    out.angles.push_back(kPi);
    return out;
  }
  const V3 P = sph(p.r, p.phi), Q = sph(q.r, q.phi);
  if (norm(V3{P.x + Q.x, P.y + Q.y, P.z + Q.z}) < 1e-12) {
    out.whole = true;
    return out;
  }
  const double pq = dot(P, Q);
  const V3 u{Q.x - pq * P.x, Q.y - pq * P.y, Q.z - pq * P.z};
  out.angles.push_back(wrap_2pi(std::atan2(dot(u, ep(p.phi)), dot(u, er(p.r, p.phi)))));
  return out;
}

Sigma SphericalCap::sigma(const Point& p0) const {
  const PolarPoint p = polar(canonical(p0));
  if (p.r > 0 && p.r >= r0_ - 1e-12) return Sigma{kPi, false, 0.5 * kPi};
  return Sigma{};
}

namespace {

// Direction coordinate of tangent t at the cap point (r, lon).
double cap_angle(double r, double lon, V3 t) {
  if (r == 0) return wrap_2pi(std::atan2(t.y, t.x));
  return wrap_2pi(std::atan2(dot(t, ep(lon)), dot(t, er(r, lon))));
}

void start_frame(const PolarPoint& p, double angle, V3& X0, V3& u) {
  if (p.r == 0) {
    X0 = {0, 0, 1};
    u = {std::cos(angle), std::sin(angle), 0};
    return;
  }
  X0 = sph(p.r, p.phi);
  const V3 a = er(p.r, p.phi), b = ep(p.phi);
  const double c = std::cos(angle), s = std::sin(angle);
  u = {c * a.x + s * b.x, c * a.y + s * b.y, c * a.z + s * b.z};
}

V3 along(V3 X0, V3 u, double s) {
  return {std::cos(s) * X0.x + std::sin(s) * u.x, std::cos(s) * X0.y + std::sin(s) * u.y,
          std::cos(s) * X0.z + std::sin(s) * u.z};
}

PolarPoint to_polar(V3 X) {
  const double h = std::hypot(X.x, X.y);
  return PolarPoint{std::atan2(h, X.z), h > 0 ? wrap_2pi(std::atan2(X.y, X.x)) : 0.0};
}

}  // namespace

ShootResult SphericalCap::shoot(const Point& p0, double angle, double length) const {
  const PolarPoint p = polar(canonical(p0));
  ShootResult res;
  V3 X0, u;
  start_frame(p, angle, X0, u);
  double s_end = std::max(0.0, length);
  const double A = std::hypot(X0.z, u.z);
  const double cr = std::cos(r0_);
  const bool boundary = p.r > 0 && p.r >= r0_ - 1e-12;
  double exit = std::numeric_limits<double>::infinity();
  if (boundary && u.z <= 1e-14) {
    exit = 0;
  } else if (cr / A < 1 - 1e-15) {
    const double alpha = std::acos(cr / A);
    const double s0 = std::atan2(u.z, X0.z);
    exit = s0 + alpha;
    if (exit <= 1e-13) exit += 2 * kPi;
  }
  if (exit < s_end) {
    s_end = exit;
    res.stop = StopKind::boundary;
  }
  res.length = s_end;
  const V3 X = along(X0, u, s_end);
  PolarPoint e = to_polar(X);
  if (res.stop == StopKind::boundary) e.r = r0_;
  res.end = canonical(e);
  const V3 T{-std::sin(s_end) * X0.x + std::cos(s_end) * u.x,
             -std::sin(s_end) * X0.y + std::cos(s_end) * u.y,
             -std::sin(s_end) * X0.z + std::cos(s_end) * u.z};
  const auto& ee = std::get<PolarPoint>(res.end);
  res.back = cap_angle(ee.r, ee.phi, V3{-T.x, -T.y, -T.z});
  return res;
}

ShootResult SphericalCap::advance(const Point& p0, double angle, double length) const {
  const PolarPoint p = polar(canonical(p0));
  ShootResult res;
  V3 X0, u;
  start_frame(p, angle, X0, u);
  PolarPoint e = to_polar(along(X0, u, std::max(0.0, length)));
  if (e.r > r0_) {
    e.r = r0_;
    res.stop = StopKind::boundary;
  }
  res.end = canonical(e);
  res.length = distance(p, res.end);
  const DirectionSet d = directions_to(res.end, p);
  res.back = d.angles.empty() ? wrap_2pi(angle + kPi) : d.angles.front();
  return res;
}

Point SphericalCap::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double z = std::cos(r0_) + (1 - std::cos(r0_)) * U(rng);
  return canonical(PolarPoint{std::acos(std::min(1.0, z)), 2 * kPi * U(rng)});
}

std::array<double, 2> SphericalCap::chart(const Point& p0) const {
  const PolarPoint& p = polar(p0);
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

SpacePtr make_polygon(std::vector<std::array<double, 2>> vertices) {
  return std::make_shared<ConvexPolygon>(std::move(vertices));
}
SpacePtr make_cap(double r0) { return std::make_shared<SphericalCap>(r0); }

}  // namespace alexgeo
