#include "alexgeo/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

Subset point_subset(const Point& p, std::string label) {
  Subset s;
  s.label = std::move(label);
  SubsetPart part;
  part.kind = SubsetPart::Kind::point;
  part.point = p;
  s.parts.push_back(part);
  return s;
}

Subset boundary_subset(std::string label) {
  Subset s;
  s.label = std::move(label);
  SubsetPart part;
  part.kind = SubsetPart::Kind::boundary;
  s.parts.push_back(part);
  return s;
}

Subset edge_path_subset(std::vector<Point> path, std::string label) {
  if (path.size() < 2) throw DomainError("edge path needs at least two points");
  Subset s;
  s.label = std::move(label);
  SubsetPart part;
  part.kind = SubsetPart::Kind::edge_path;
  part.path = std::move(path);
  s.parts.push_back(part);
  return s;
}

namespace {

// Nearest point to x on the geodesic a -> b: dense scan, then golden section.
std::pair<double, Point> nearest_on_piece(const Space& S, const Point& a, const Point& b, const Point& x) {
  double L = S.distance(a, b);
  if (L == 0) return {S.distance(a, x), a};
  DirectionSet dirs = S.directions_to(a, b);
  double ang = dirs.angles.empty() ? 0.0 : dirs.angles.front();
  auto at = [&](double s) { return S.shoot(a, ang, s).end; };
  auto d = [&](double s) { return S.distance(at(s), x); };
  const int n = 64;
  int best = 0;
  double bv = d(0);
  for (int i = 1; i <= n; ++i) {
    double v = d(L * i / n);
    if (v < bv) bv = v, best = i;
  }
  double lo = L * std::max(0, best - 1) / n, hi = L * std::min(n, best + 1) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double c1 = hi - g * (hi - lo), c2 = lo + g * (hi - lo);
  double f1 = d(c1), f2 = d(c2);
  for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, L); ++it) {
    if (f1 < f2) {
      hi = c2, c2 = c1, f2 = f1, c1 = hi - g * (hi - lo), f1 = d(c1);
    } else {
      lo = c1, c1 = c2, f1 = f2, c2 = lo + g * (hi - lo), f2 = d(c2);
    }
  }
  double s = 0.5 * (lo + hi);
  double v = d(s);
  if (bv < v) return {bv, at(L * best / n)};
  return {v, at(s)};
}

Point boundary_foot(const Space& S, const Point& x) {
  if (S.kind() == SpaceKind::polygon) {
    const auto& P = dynamic_cast<const ConvexPolygon&>(S);
    auto c = S.chart(x);
    const auto& V = P.vertices();
    double best = std::numeric_limits<double>::infinity();
    PlanarPoint foot;
    for (std::size_t i = 0; i < V.size(); ++i) {
      auto A = V[i], B = V[(i + 1) % V.size()];
      double ex = B[0] - A[0], ey = B[1] - A[1];
      double u = std::clamp(((c[0] - A[0]) * ex + (c[1] - A[1]) * ey) / (ex * ex + ey * ey), 0.0, 1.0);
      double fx = A[0] + u * ex, fy = A[1] + u * ey;
      double dd = std::hypot(c[0] - fx, c[1] - fy);
      if (dd < best) best = dd, foot = {fx, fy};
    }
    return foot;
  }
  if (S.kind() == SpaceKind::cap) {
    const auto& C = dynamic_cast<const SphericalCap&>(S);
    auto pp = std::get<PolarPoint>(S.canonical(x));
    return PolarPoint{C.r0(), pp.phi};
  }
  throw DomainError("space has no boundary");
}

}  // namespace

double distance_to_subset(const Space& S, const Subset& E, const Point& x) {
  if (E.whole) return 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : E.parts) {
    switch (part.kind) {
      case SubsetPart::Kind::point: best = std::min(best, S.distance(part.point, x)); break;
      case SubsetPart::Kind::boundary: best = std::min(best, S.boundary_distance(x)); break;
      case SubsetPart::Kind::edge_path:
        for (std::size_t i = 0; i + 1 < part.path.size(); ++i)
          best = std::min(best, nearest_on_piece(S, part.path[i], part.path[i + 1], x).first);
        break;
    }
  }
  return best;
}

Point foot_point(const Space& S, const Subset& E, const Point& x) {
  if (E.whole) return S.canonical(x);
  if (E.empty()) throw DomainError("empty subset has no foot point");
  double best = std::numeric_limits<double>::infinity();
  Point foot;
  for (const auto& part : E.parts) {
    std::pair<double, Point> c;
    switch (part.kind) {
      case SubsetPart::Kind::point: c = {S.distance(part.point, x), S.canonical(part.point)}; break;
      case SubsetPart::Kind::boundary: {
        Point f = boundary_foot(S, x);
        c = {S.distance(f, x), f};
        break;
      }
      case SubsetPart::Kind::edge_path:
        c = {std::numeric_limits<double>::infinity(), Point{}};
        for (std::size_t i = 0; i + 1 < part.path.size(); ++i) {
          auto r = nearest_on_piece(S, part.path[i], part.path[i + 1], x);
          if (r.first < c.first) c = r;
        }
        break;
    }
    if (c.first < best) best = c.first, foot = c.second;
  }
  return foot;
}

namespace {

Point sample_on(const Space& S, const Subset& E, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, E.parts.size() - 1);
  const auto& part = E.parts[pick(rng)];
  std::uniform_real_distribution<double> U(0, 1);
  switch (part.kind) {
    case SubsetPart::Kind::point: return S.canonical(part.point);
    case SubsetPart::Kind::boundary: return boundary_foot(S, S.random_point(rng));
    case SubsetPart::Kind::edge_path: {
      std::uniform_int_distribution<std::size_t> seg(0, part.path.size() - 2);
      std::size_t i = seg(rng);
      const Point& a = part.path[i];
      const Point& b = part.path[i + 1];
      DirectionSet dirs = S.directions_to(a, b);
      double ang = dirs.angles.empty() ? 0.0 : dirs.angles.front();
      return S.shoot(a, ang, U(rng) * S.distance(a, b)).end;
    }
  }
  return S.canonical(part.point);
}

}  // namespace

ExtremalReport verify_extremal(const SpacePtr& S, const Subset& E, const ExtremalOptions& opts) {
  ExtremalReport rep;
  if (E.whole || E.empty()) {
    rep.trivial = true;
    rep.criterion = rep.invariance = true;
    return rep;
  }
  std::mt19937_64 rng(opts.seed);
  GradientOptions go;
  go.grid = opts.directions;
  // (a) critical-point criterion at foot points.
  for (int k = 0; k < opts.n_funcs; ++k) {
    Point q;
    int tries = 0;
    do {
      q = S->random_point(rng);
    } while (distance_to_subset(*S, E, q) < 1e-6 && ++tries < 100);
    Point p = foot_point(*S, E, q);
    if (S->distance(p, q) < 1e-9) continue;
    double g = gradient(dist(q), *S, p, go).norm;
    rep.worst_gradient = std::max(rep.worst_gradient, g);
    ++rep.criterion_checks;
  }
  rep.criterion = rep.worst_gradient < opts.tol;
  // (b) invariance of dist^2 flows started on E.
  FlowOptions fo;
  fo.h = opts.h;
  fo.gradient = go;
  const double T = opts.n_steps * opts.h;
  for (int k = 0; k < opts.n_funcs; ++k) {
    Point z = S->random_point(rng);
    Point x = sample_on(*S, E, rng);
    CurveRecord c = gradient_curve(dist_sq(z), S, x, T, fo);
    for (const auto& s : c.samples) rep.worst_drift = std::max(rep.worst_drift, distance_to_subset(*S, E, s.p));
    ++rep.flows;
  }
  rep.drift_rate = T > 0 ? rep.worst_drift / T : 0;
  rep.invariance = rep.worst_drift <= opts.n_steps * opts.h * opts.tol;
  return rep;
}

std::vector<ExtremalCandidate> detect_extremal(const SpacePtr& S, const ExtremalOptions& opts) {
  std::vector<ExtremalCandidate> out;
  Subset whole;
  whole.whole = true;
  whole.label = "whole";
  out.push_back({whole, "whole space", verify_extremal(S, whole, opts)});
  Subset none;
  none.label = "empty";
  out.push_back({none, "empty set", verify_extremal(S, none, opts)});
  if (S->has_boundary()) {
    Subset b = boundary_subset();
    out.push_back({b, "boundary", verify_extremal(S, b, opts)});
  }
  int k = 0;
  for (const auto& sp : S->singular_points()) {
    bool cand = sp.boundary ? sp.angle <= kPi / 2 + 1e-12 : sp.angle <= kPi + 1e-12;
    if (!cand) continue;
    Subset p = point_subset(sp.where, sp.label.empty() ? "point-" + std::to_string(k) : sp.label);
    ++k;
    std::string why = sp.boundary ? "corner with interior angle " + num(sp.angle) + " <= pi/2"
                                  : "cone point with angle " + num(sp.angle) + " <= pi";
    out.push_back({p, why, verify_extremal(S, p, opts)});
  }
  return out;
}

GradientFloorReport extremal_gradient_floor(const SpacePtr& S, const Subset& E, double eps0, int n,
                                            std::uint64_t seed) {
  GradientFloorReport rep;
  rep.eps0 = eps0;
  ExprPtr f;
  if (E.parts.size() == 1 && E.parts[0].kind == SubsetPart::Kind::point) {
    f = dist(E.parts[0].point);
  } else if (E.parts.size() == 1 && E.parts[0].kind == SubsetPart::Kind::boundary) {
    f = dist_boundary(*S);
  } else {
    throw DomainError("gradient floor supports single point or boundary subsets");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < n; ++i) {
    // Shoot inward from a point of E for a distance in (0, eps0).
    Point base = sample_on(*S, E, rng);
    Sigma sg = S->sigma(base);
    double ang = sg.closed ? sg.length * U(rng) : sg.start + sg.length * (0.05 + 0.9 * U(rng));
    Point x = S->shoot(base, ang, eps0 * (0.02 + 0.96 * U(rng))).end;
    double d = distance_to_subset(*S, E, x);
    if (!(d > 0 && d < eps0)) continue;
    rep.floor = std::min(rep.floor, gradient(f, *S, x).norm);
    ++rep.samples;
  }
  return rep;
}

}  // namespace alexgeo
