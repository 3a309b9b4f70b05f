#include "alexgeo/radial.hpp"

#include <algorithm>
#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

namespace {

void check_kappa(const Space& S, int kappa, double T) {
  if (kappa < -1 || kappa > 1) throw DomainError("kappa must be -1, 0 or 1");
  if (kappa == 1 && T > kPi / 2 + 1e-12)
    throw DomainError("spherical radial curves are defined for t <= pi/2, got " + num(T));
  if (S.kappa() < kappa - 1e-12)
    throw CurvatureBoundError("space curvature bound " + num(S.kappa()) + " is below kappa " +
                              std::to_string(kappa));
}

// Largest t <= L with |p gamma(t)| = t along the geodesic from p in direction xi.
double geodesic_regime_end(const Space& S, const Point& p, double xi, double L, double tol) {
  auto minimizing = [&](double t) {
    ShootResult r = S.shoot(p, xi, t);
    if (r.length < t - 1e-12 * std::max(1.0, t)) return false;
    return S.distance(p, r.end) >= t - tol * std::max(1.0, t);
  };
  if (L <= 0) return 0;
  ShootResult full = S.shoot(p, xi, L);
  double hi = std::min(L, full.length);
  if (minimizing(hi)) return hi;
  double lo = 0;
  for (int i = 0; i < 60 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (minimizing(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double radial_speed_factor(int kappa, double r, double t) {
  if (t <= 0) return 1;
  switch (kappa) {
    case 0: return r / t;
    case -1: return std::tanh(r) / std::tanh(t);
    case 1: return std::tan(r) / std::tan(t);
  }
  throw DomainError("kappa must be -1, 0 or 1");
}

CurveRecord radial_curve(const SpacePtr& S, const Point& p0, double xi, int kappa, double T,
                         const RadialOptions& opts) {
  check_kappa(*S, kappa, T);
  if (!(opts.h > 0)) throw DomainError("step h must be positive");
  Point p = S->canonical(p0);
  Sigma sg = S->sigma(p);
  if (!sg.contains(xi)) throw DomainError("direction " + num(xi) + " is not in Sigma_p");
  xi = sg.reduce(xi);

  std::vector<double> marks = opts.sample_times;
  marks.push_back(T);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::remove_if(marks.begin(), marks.end(), [&](double s) { return s < 0 || s > T; }),
              marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  double t_star = geodesic_regime_end(*S, p, xi, T, opts.regime_tol);

  CurveRecord rec;
  rec.space = S;
  rec.provenance = Provenance::radial;
  rec.h = opts.h;

  // Geodesic regime: sample the exact geodesic at the grid and the marks.
  std::vector<double> gt;
  int n = static_cast<int>(std::ceil(t_star / opts.h - 1e-9));
  for (int k = 0; k <= n; ++k) gt.push_back(std::min(t_star, k * opts.h));
  for (double s : marks)
    if (s <= t_star) gt.push_back(s);
  std::sort(gt.begin(), gt.end());
  gt.erase(std::unique(gt.begin(), gt.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           gt.end());
  for (double t : gt) {
    CurveSample s;
    s.t = t;
    if (t == 0) {
      s.p = p;
    } else {
      ShootResult r = S->shoot(p, xi, t);
      s.p = r.end;
      s.left = TangentVec{1.0, r.back, S->sigma(r.end)};
      s.has_left = true;
    }
    rec.samples.push_back(s);
  }
  for (std::size_t i = 0; i + 1 < rec.samples.size(); ++i) {
    auto& s = rec.samples[i];
    Sigma here = S->sigma(s.p);
    double fwd = i == 0 ? xi
                        : (here.closed ? here.reduce(s.left.angle + here.length / 2)
                                       : here.reduce(s.left.angle + kPi));
    s.right = TangentVec{1.0, fwd, here};
    s.has_right = true;
  }
  if (t_star >= T - 1e-15) return rec;
  rec.events.push_back({t_star, EventKind::regime_switch, "leaves geodesic regime"});

  auto o = S->oracle(p);
  FlowOptions fo;
  fo.h = opts.h;
  fo.gradient = opts.gradient;
  fo.tol_stop = 1e-8;
  for (double s : marks)
    if (s > t_star) fo.sample_times.push_back(s);
  const double h = opts.h;
  fo.step_control = [o, h](double, const Point& x) {
    return o->certified(x).error > 0.1 * h ? 0.5 * h : h;
  };
  auto dp = dist(p);
  VelocityField V = [&, kappa](double t, const Point& x) {
    double r = o->distance(x);
    TangentVec g = gradient(dp, *S, x, opts.gradient);
    g.norm *= radial_speed_factor(kappa, r, t);
    return g;
  };
  CurveRecord tail = integrate(S, rec.samples.back().p, t_star, T, V, fo, Provenance::radial);
  rec.samples.back().right = tail.samples.front().right;
  rec.samples.back().has_right = tail.samples.front().has_right;
  rec.samples.insert(rec.samples.end(), tail.samples.begin() + 1, tail.samples.end());
  rec.events.insert(rec.events.end(), tail.events.begin(), tail.events.end());
  return rec;
}

Point gexp_map(const SpacePtr& S, const Point& p, const TangentVec& v, int kappa,
               const RadialOptions& opts) {
  if (kappa == 1 && v.norm > kPi / 2 + 1e-12) throw DomainError("|v| must be at most pi/2 for kappa = 1");
  if (v.norm == 0) return S->canonical(p);
  return radial_curve(S, p, v.angle, kappa, v.norm, opts).samples.back().p;
}

double tangent_cone_metric(int kappa, const TangentVec& u, const TangentVec& v) {
  if (kappa < -1 || kappa > 1) throw DomainError("kappa must be -1, 0 or 1");
  if (kappa == 1 && (u.norm > kPi || v.norm > kPi)) throw DomainError("spherical suspension needs |u|, |v| <= pi");
  double a = u.norm == 0 || v.norm == 0 ? 0.0 : std::min(kPi, u.sigma.arcdist(u.angle, v.angle));
  return model_side(kappa, u.norm, v.norm, a);
}

RadialComparisonReport verify_radial_comparison(const SpacePtr& S, const Point& p0, double xi,
                                                const Point& q0, int kappa,
                                                const std::vector<double>& t_grid,
                                                const RadialOptions& opts) {
  RadialComparisonReport rep;
  Point p = S->canonical(p0), q = S->canonical(q0);
  double pq = S->distance(p, q);
  if (kappa == 1 && pq > kPi / 2 + 1e-12) throw DomainError("kappa = 1 comparison needs |pq| <= pi/2");
  std::vector<double> grid;
  for (double t : t_grid)
    if (t > 0) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  if (grid.empty()) return rep;
  RadialOptions o = opts;
  o.sample_times = grid;
  CurveRecord c = radial_curve(S, p, xi, kappa, grid.back(), o);
  DirectionSet up = S->directions_to(p, q);
  Sigma sg = S->sigma(p);
  rep.initial_angle = kPi;
  if (up.whole) rep.initial_angle = 0;
  for (double a : up.angles) rep.initial_angle = std::min(rep.initial_angle, std::min(kPi, sg.arcdist(xi, a)));
  for (double t : grid) {
    double b = S->distance(c.point_at(t), q);
    double ang = comparison_angle(kappa, t, b, pq);
    if (!rep.angle.empty()) rep.max_increase = std::max(rep.max_increase, ang - rep.angle.back());
    rep.max_excess = std::max(rep.max_excess, ang - rep.initial_angle);
    rep.t.push_back(t);
    rep.angle.push_back(ang);
  }
  return rep;
}

ThetaReport verify_theta_monotone(const ExprPtr& f, const SpacePtr& S, const Point& p0, double xi,
                                  double lambda, const std::vector<double>& t_grid,
                                  const RadialOptions& opts) {
  if (lambda < 0) throw DomainError("theta monotonicity needs lambda >= 0");
  ThetaReport rep;
  Point p = S->canonical(p0);
  rep.theta0 = differential(f, *S, p)(xi);
  std::vector<double> grid;
  for (double t : t_grid)
    if (t > 0) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  if (grid.empty()) return rep;
  RadialOptions o = opts;
  o.sample_times = grid;
  CurveRecord c = radial_curve(S, p, xi, 0, grid.back(), o);
  double fp = eval(f, *S, p);
  double prev = rep.theta0;
  for (double t : grid) {
    double v = (eval(f, *S, c.point_at(t)) - fp - 0.5 * lambda * t * t) / t;
    rep.max_increase = std::max(rep.max_increase, v - prev);
    prev = v;
    rep.t.push_back(t);
    rep.value.push_back(v);
  }
  return rep;
}

InverseCheckReport gexp_inverse_check(const SpacePtr& S, const CurveRecord& geo, int probes,
                                      const RadialOptions& opts) {
  InverseCheckReport rep;
  if (geo.samples.size() < 2) return rep;
  const Point& p = geo.samples.front().p;
  const Point& q = geo.samples.back().p;
  double pq = S->distance(p, q);
  int kappa = S->kappa() >= 1 - 1e-12 ? 1 : (S->kappa() >= -1e-12 ? 0 : -1);
  double T = kappa == 1 ? std::min(pq, kPi / 2) : pq;
  if (T <= 0) return rep;
  Sigma sg = S->sigma(p);
  double xi = geo.samples.front().right.angle;
  int nt = std::max(8, static_cast<int>(std::round(T / std::max(opts.h, 1e-6) / 8)));
  nt = std::min(nt, 200);
  std::vector<double> grid;
  for (int k = 1; k <= nt; ++k) grid.push_back(T * k / nt);
  RadialOptions o = opts;
  o.sample_times = grid;
  auto grid_dirs = sg.grid(probes);
  for (double zeta : grid_dirs) {
    if (sg.arcdist(zeta, xi) < 1e-9) continue;
    ++rep.probes;
    CurveRecord c = radial_curve(S, p, zeta, kappa, T, o);
    double prev = -1;
    for (double t : grid) {
      Point a = c.point_at(t);
      double pa = S->distance(p, a), aq = S->distance(a, q);
      if (aq < 1e-9) continue;  // reaching q itself is allowed
      double excess = pa + aq - pq;
      rep.min_excess = std::min(rep.min_excess, excess);
      if (excess < 1e-9 && pa > 1e-9) ++rep.reentries;
      double ang = comparison_angle(kappa, pq, pa, aq);
      if (prev >= 0) rep.max_decrease = std::max(rep.max_decrease, prev - ang);
      prev = ang;
    }
  }
  return rep;
}

}  // namespace alexgeo
