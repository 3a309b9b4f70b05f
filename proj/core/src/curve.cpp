#include "alexgeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::gradient_curve: return "gradient-curve";
    case Provenance::radial: return "radial";
    case Provenance::geodesic: return "geodesic";
    case Provenance::traced_qg: return "traced-qg";
    case Provenance::convex_curve: return "convex-curve";
    case Provenance::prequasigeodesic: return "pre-quasigeodesic";
    case Provenance::user: return "user";
  }
  return "user";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::vertex: return "vertex";
    case EventKind::boundary: return "boundary";
    case EventKind::stop: return "stop";
    case EventKind::truncation: return "truncation";
    case EventKind::joint: return "joint";
    case EventKind::regime_switch: return "regime-switch";
  }
  return "vertex";
}

Point CurveRecord::point_at(double t) const {
  if (samples.empty()) throw DomainError("empty curve");
  if (t <= samples.front().t) return samples.front().p;
  if (t >= samples.back().t) return samples.back().p;
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const CurveSample& s) { return v < s.t; });
  std::size_t i = static_cast<std::size_t>(it - samples.begin()) - 1;
  const auto& a = samples[i];
  const double eps = 1e-12 * std::max(1.0, std::abs(t));
  if (t - a.t <= eps) return a.p;
  if (samples[i + 1].t - t <= eps) return samples[i + 1].p;
  if (!a.has_right || a.right.norm == 0) return a.p;
  return space->shoot(a.p, a.right.angle, a.right.norm * (t - a.t)).end;
}

double CurveRecord::length() const {
  double L = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    L += space->distance(samples[i].p, samples[i + 1].p);
  return L;
}

std::size_t CurveRecord::count(EventKind k) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [k](const CurveEvent& e) { return e.kind == k; }));
}

std::string CurveRecord::to_csv() const {
  std::ostringstream os;
  os << "t,x,y,speed\n";
  for (const auto& s : samples) {
    auto c = space->chart(s.p);
    os << num(s.t) << ',' << num(c[0]) << ',' << num(c[1]) << ','
       << num(s.has_right ? s.right.norm : (s.has_left ? s.left.norm : 0.0)) << '\n';
  }
  return os.str();
}

std::string CurveRecord::to_svg(double width_px) const {
  std::vector<std::array<double, 2>> pts;
  for (const auto& s : samples) pts.push_back(space->chart(s.p));
  std::vector<std::array<double, 2>> marks;
  for (const auto& sp : space->singular_points()) marks.push_back(space->chart(sp.where));
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto* v : {&pts, &marks})
    for (const auto& c : *v) {
      x0 = std::min(x0, c[0]);
      x1 = std::max(x1, c[0]);
      y0 = std::min(y0, c[1]);
      y1 = std::max(y1, c[1]);
    }
  if (x0 > x1) x0 = y0 = -1, x1 = y1 = 1;
  double span = std::max({x1 - x0, y1 - y0, 1e-9});
  double pad = 0.05 * span;
  double scale = width_px / (span + 2 * pad);
  auto X = [&](double x) { return (x - x0 + pad) * scale; };
  auto Y = [&](double y) { return (y1 - y + pad) * scale; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_px) << "\" height=\""
     << num((y1 - y0 + 2 * pad) * scale) << "\">\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (const auto& c : pts) os << num(X(c[0])) << ',' << num(Y(c[1])) << ' ';
  os << "\"/>\n";
  for (const auto& c : marks)
    os << "<circle cx=\"" << num(X(c[0])) << "\" cy=\"" << num(Y(c[1])) << "\" r=\"4\" fill=\"red\"/>\n";
  os << "</svg>\n";
  return os.str();
}

namespace {

double forward_from_back(const Sigma& sg, double back) {
  return sg.closed ? sg.reduce(back + sg.length / 2) : sg.reduce(back + kPi);
}

CurveRecord ray_samples(const SpacePtr& S, const Point& p, double angle, double length, int n,
                        Provenance prov) {
  if (n < 1) throw DomainError("sample count must be positive");
  CurveRecord rec;
  rec.space = S;
  rec.provenance = prov;
  rec.h = length / n;
  Point p0 = S->canonical(p);
  CurveSample s0;
  s0.t = 0;
  s0.p = p0;
  s0.right = TangentVec{1.0, angle, S->sigma(p0)};
  s0.has_right = length > 0;
  rec.samples.push_back(s0);
  for (int k = 1; k <= n; ++k) {
    double t = length * k / n;
    ShootResult r = S->shoot(p0, angle, t);
    CurveSample s;
    s.p = r.end;
    Sigma sg = S->sigma(r.end);
    s.left = TangentVec{1.0, r.back, sg};
    s.has_left = true;
    bool cut = r.length < t - 1e-12 * std::max(1.0, t);
    s.t = cut ? r.length : t;
    if (cut) {
      rec.events.push_back({s.t, r.stop == StopKind::boundary ? EventKind::boundary : EventKind::vertex,
                            "geodesic stops"});
      rec.samples.push_back(s);
      break;
    }
    if (k < n) {
      s.right = TangentVec{1.0, forward_from_back(sg, r.back), sg};
      s.has_right = true;
    }
    rec.samples.push_back(s);
  }
  return rec;
}

}  // namespace

CurveRecord geodesic(const SpacePtr& S, const Point& p, const Point& q, int n) {
  Point a = S->canonical(p), b = S->canonical(q);
  double L = S->distance(a, b);
  DirectionSet dirs = S->directions_to(a, b);
  double angle = dirs.angles.empty() ? S->sigma(a).start : dirs.angles.front();
  CurveRecord rec = ray_samples(S, a, angle, L, L > 0 ? n : 1, Provenance::geodesic);
  if (!rec.samples.empty() && L > 0) rec.samples.back().p = b;
  return rec;
}

CurveRecord geodesic_ray(const SpacePtr& S, const Point& p, double angle, double length, int n) {
  return ray_samples(S, p, angle, length, n, Provenance::geodesic);
}

CurveRecord path_curve(const SpacePtr& S, const std::vector<Point>& points, double step) {
  if (points.size() < 2) throw DomainError("path needs at least two points");
  if (!(step > 0)) throw DomainError("sample step must be positive");
  CurveRecord rec;
  rec.space = S;
  rec.provenance = Provenance::user;
  rec.h = step;
  double t0 = 0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    Point a = S->canonical(points[k]);
    double L = S->distance(a, points[k + 1]);
    if (L <= 0) continue;
    int n = std::max(1, static_cast<int>(std::ceil(L / step - 1e-9)));
    CurveRecord piece = geodesic(S, a, points[k + 1], n);
    if (rec.samples.empty()) {
      rec.samples.push_back(piece.samples.front());
    } else {
      rec.samples.back().right = piece.samples.front().right;
      rec.samples.back().has_right = true;
      rec.events.push_back({t0, EventKind::joint, "path corner"});
    }
    for (std::size_t i = 1; i < piece.samples.size(); ++i) {
      CurveSample s = piece.samples[i];
      s.t += t0;
      rec.samples.push_back(s);
    }
    t0 += L;
  }
  return rec;
}

}  // namespace alexgeo
