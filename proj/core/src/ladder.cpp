#include <algorithm>
#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/quasigeodesic.hpp"

namespace alexgeo {

namespace {

// alpha^+ = (|x a| / s) grad dist_x at the end a of a unit radial curve from x.
TangentVec radial_velocity(const SpacePtr& S, const Point& x, const Point& a, double s,
                           const GradientOptions& g) {
  TangentVec v = gradient(dist(x), *S, a, g);
  v.norm *= radial_speed_factor(0, S->distance(x, a), s);
  return v;
}

// Polar vector of v from the gradient of dist_v at the origin of T_p:
// points to the farthest direction of Sigma, with |v*| <= |v|.
TangentVec gradient_polar(const TangentVec& v) {
  const Sigma& sg = v.sigma;
  double dir, far;
  if (sg.closed) {
    dir = sg.reduce(v.angle + sg.length / 2);
    far = sg.length / 2;
  } else {
    double off = sg.arcdist(sg.start, v.angle);
    bool to_end = sg.length - off >= off;
    dir = to_end ? sg.start + sg.length : sg.start;
    far = to_end ? sg.length - off : off;
  }
  double k = -std::cos(std::min(kPi, far));
  return TangentVec{k > 0 ? v.norm * k : 0.0, sg.reduce(dir), sg};
}

TangentVec scaled_vec(TangentVec v, double k) {
  v.norm *= k;
  return v;
}

}  // namespace

CurveRecord build_convex_curve(const SpacePtr& S, const Point& p, double xi, double eps, double T,
                               const LadderOptions& opts, double speed) {
  if (!(eps > 0) || !(T > 0)) throw DomainError("eps and T must be positive");
  Point x = S->canonical(p);
  TangentVec v{speed, S->sigma(x).reduce(xi), S->sigma(x)};
  CurveRecord rec;
  rec.space = S;
  rec.provenance = Provenance::convex_curve;
  rec.h = opts.h;
  CurveSample s0;
  s0.p = x;
  s0.right = v;
  s0.has_right = true;
  rec.samples.push_back(s0);
  double t = 0;
  while (t < T - 1e-14 * std::max(1.0, T)) {
    double piece = std::min(eps, T - t);
    if (v.norm < opts.stall) {
      rec.events.push_back({t, EventKind::stop, "speed below stall threshold"});
      CurveSample e;
      e.t = T;
      e.p = x;
      e.left = e.right = TangentVec{0, 0, S->sigma(x)};
      e.has_left = e.has_right = true;
      rec.samples.back().right = e.right;
      rec.samples.push_back(e);
      break;
    }
    RadialOptions ro;
    ro.h = opts.h * v.norm;
    ro.gradient = opts.gradient;
    CurveRecord rc = radial_curve(S, x, v.angle, 0, v.norm * piece, ro);
    for (std::size_t i = 1; i < rc.samples.size(); ++i) {
      CurveSample s = rc.samples[i];
      s.t = (i + 1 == rc.samples.size()) ? t + piece : t + s.t / v.norm;
      s.left = scaled_vec(s.left, v.norm);
      s.right = scaled_vec(s.right, v.norm);
      rec.samples.push_back(s);
    }
    for (const auto& e : rc.events) rec.events.push_back({t + e.t / v.norm, e.kind, e.note});
    const Point end = rec.samples.back().p;
    TangentVec next = scaled_vec(radial_velocity(S, x, end, v.norm * piece, opts.gradient), v.norm);
    rec.samples.back().right = next;
    rec.samples.back().has_right = true;
    t += piece;
    if (t < T - 1e-14 * std::max(1.0, T)) rec.events.push_back({t, EventKind::joint, "radial joint"});
    x = end;
    v = next;
  }
  return rec;
}

PreQuasigeodesic build_prequasigeodesic(const SpacePtr& S, const Point& p, double xi, double eps,
                                        double T, const LadderOptions& opts, double speed) {
  if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0, 1)");
  if (!(T > 0)) throw DomainError("T must be positive");
  PreQuasigeodesic out;
  CurveRecord& rec = out.curve;
  rec.space = S;
  rec.provenance = Provenance::prequasigeodesic;
  rec.h = opts.h;
  Point x = S->canonical(p);
  TangentVec v{speed, S->sigma(x).reduce(xi), S->sigma(x)};
  CurveSample s0;
  s0.p = x;
  s0.right = v;
  s0.has_right = true;
  rec.samples.push_back(s0);
  double t = 0;
  while (t < T - 1e-14 * std::max(1.0, T)) {
    if (v.norm < opts.stall) {
      rec.events.push_back({t, EventKind::stop, "stall"});
      break;
    }
    double piece = std::min(eps, T - t);
    CurveRecord b = build_convex_curve(S, x, v.angle, eps, piece, opts, v.norm);
    const double threshold = (1 - eps) * v.norm;
    std::size_t j = b.samples.size() - 1;
    for (std::size_t i = 1; i < b.samples.size(); ++i) {
      if (b.samples[i].has_right && b.samples[i].right.norm < threshold) {
        j = i;
        break;
      }
    }
    for (std::size_t i = 1; i <= j; ++i) {
      CurveSample s = b.samples[i];
      s.t += t;
      rec.samples.push_back(s);
    }
    for (const auto& e : b.events)
      if (e.t <= b.samples[j].t) rec.events.push_back({t + e.t, e.kind, e.note});
    CurveSample& J = rec.samples.back();
    t = J.t;
    x = J.p;
    if (J.left.norm < opts.stall) {
      J.right = TangentVec{0, 0, S->sigma(x)};
      J.has_right = true;
      rec.events.push_back({t, EventKind::stop, "stall"});
      break;
    }
    TangentVec vstar = gradient_polar(J.left);
    J.right = vstar;
    J.has_right = true;
    if (t < T - 1e-14 * std::max(1.0, T)) {
      out.joints.push_back(t);
      rec.events.push_back({t, EventKind::joint, "polar renormalization"});
    }
    v = vstar;
  }
  out.entropy = entropy(rec);
  return out;
}

ChopExtendReport chop_extend_demo(const SpacePtr& S, const Point& p, double xi, double eps,
                                  const LadderOptions& opts, std::uint64_t seed) {
  ChopExtendReport rep;
  const double T0 = 1.0;
  PreQuasigeodesic first = build_prequasigeodesic(S, p, xi, eps, T0, opts);
  CurveRecord curve = first.curve;
  CurveSample& last = curve.samples.back();
  rep.t_max = last.t;
  if (!last.has_left || last.left.norm == 0) throw DomainError("curve stalled before the extension point");
  TangentVec vstar = polar_vector(last.left);
  vstar.norm = last.left.norm;
  rep.extension_atom = std::log(vstar.norm) - std::log(last.left.norm);
  last.right = vstar;
  last.has_right = true;
  PreQuasigeodesic ext = build_prequasigeodesic(S, last.p, vstar.angle, eps, eps, opts, vstar.norm);
  const double t = rep.t_max;
  for (std::size_t i = 1; i < ext.curve.samples.size(); ++i) {
    CurveSample s = ext.curve.samples[i];
    s.t += t;
    curve.samples.push_back(s);
  }
  const auto& sm = curve.samples;
  const Point pt = S->canonical(last.p);
  const Sigma sg = S->sigma(pt);

  auto left_at = [&](double tb, Point& where) {
    auto it = std::lower_bound(sm.begin(), sm.end(), tb, [](const CurveSample& s, double v) { return s.t < v; });
    std::size_t k = static_cast<std::size_t>(it - sm.begin());
    if (k == 0) k = 1;
    const auto& a = sm[k - 1];
    ShootResult r = S->shoot(a.p, a.right.angle, a.right.norm * (tb - a.t));
    where = r.end;
    return TangentVec{a.right.norm, r.back, S->sigma(r.end)};
  };

  double tb = t, theta = 0, mu = 0;
  Point q = pt;
  TangentVec gm;
  for (int k = 0; k < 40; ++k) {
    tb = t + eps * (1 - 1e-9) * std::ldexp(1.0, -k);
    gm = left_at(tb, q);
    if (S->distance(pt, q) <= 0) continue;
    DirectionSet up = S->directions_to(pt, q);
    theta = up.whole ? 0 : kPi;
    for (double a : up.angles) theta = std::min(theta, std::min(kPi, sg.arcdist(a, vstar.angle)));
    mu = std::log(vstar.norm) - std::log(gm.norm);
    if (theta < eps && mu < eps * (theta + tb - t)) {
      rep.chop_found = true;
      break;
    }
  }
  rep.t_bar = tb;
  rep.theta = theta;
  rep.mu = mu;

  if (S->kappa() >= 0 && rep.chop_found) {
    // Inequality check for f = dist_z^2 / 2 (1-concave) on the rescaled piece.
    DirectionSet up = S->directions_to(pt, q);
    double nu = up.angles.empty() ? vstar.angle : up.angles.front();
    double tp = (tb - t) * vstar.norm;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
      ExprPtr f = scaled(0.5, dist_sq(S->random_point(rng)));
      DirectionalFn dp = differential(f, *S, pt);
      double dnu = dp(nu);
      if (dnu < 0) continue;
      double dxi = dp(vstar.angle);
      double fminus = -differential(f, *S, q)(gm.angle) * gm.norm / vstar.norm;
      double margin = (dxi - fminus + 1.0 * tp) - (dxi - dnu);
      rep.piece_worst_margin = std::min(rep.piece_worst_margin, margin);
      ++rep.piece_checks;
    }
  }
  return rep;
}

}  // namespace alexgeo
