#include "alexgeo/quasigeodesic.hpp"

#include <algorithm>
#include <queue>
#include <cmath>
#include <future>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

namespace {

double forward_of(const Sigma& sg, double back) {
  return sg.closed ? sg.reduce(back + sg.length / 2) : sg.reduce(back + kPi);
}

// Probes inside the reflex sector at samples where the curve turns: random
// probes rarely land there, and that is where a corner shows up as a
// non-convex development.
std::vector<Point> corner_probes(const Space& S, const CurveRecord& c, int max_corners) {
  std::vector<std::pair<double, Point>> found;
  const double len = c.length();
  for (const auto& s : c.samples) {
    if (!s.has_left || !s.has_right || s.left.norm == 0 || s.right.norm == 0) continue;
    const Sigma& sg = s.right.sigma;
    if (!sg.closed) continue;
    double x = std::fmod(s.right.angle - s.left.angle, sg.length);
    if (x < 0) x += sg.length;
    const double big = std::max(x, sg.length - x);
    if (big <= kPi + 1e-9) continue;
    const double mid = x >= sg.length - x ? sg.advance(s.left.angle, x / 2)
                                          : sg.advance(s.left.angle, -(sg.length - x) / 2);
    const double reach = std::min(0.1, 0.25 * len);
    for (double f : {1.0, 0.25}) found.emplace_back(big, S.shoot(s.p, mid, f * reach).end);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Point> out;
  for (std::size_t i = 0; i < found.size() && i < 2 * static_cast<std::size_t>(max_corners); ++i)
    out.push_back(found[i].second);
  return out;
}

}  // namespace

CurveRecord trace_quasigeodesic(const SpacePtr& S, const Point& p, double xi, double L,
                                const TraceOptions& opts) {
  if (!(L > 0)) throw DomainError("trace length must be positive");
  if (!(opts.sample_step > 0)) throw DomainError("sample step must be positive");
  Point x = S->canonical(p);
  Sigma sg = S->sigma(x);
  if (!sg.contains(xi)) throw DomainError("direction " + num(xi) + " is not in Sigma_p");
  double dir = sg.reduce(xi);
  const double ds = opts.sample_step;

  CurveRecord rec;
  rec.space = S;
  rec.provenance = Provenance::traced_qg;
  rec.h = ds;
  CurveSample s0;
  s0.p = x;
  s0.right = TangentVec{1.0, dir, sg};
  s0.has_right = true;
  rec.samples.push_back(s0);

  double t = 0;
  while (t < L - 1e-15 * std::max(1.0, L)) {
    ShootResult full = S->shoot(x, dir, L - t);
    const double seg = full.length;
    long k = static_cast<long>(std::floor(t / ds)) + 1;
    for (; k * ds < t + seg - 1e-12 * std::max(1.0, L); ++k) {
      ShootResult r = S->shoot(x, dir, k * ds - t);
      CurveSample s;
      s.t = k * ds;
      s.p = r.end;
      Sigma here = S->sigma(r.end);
      s.left = TangentVec{1.0, r.back, here};
      s.right = TangentVec{1.0, forward_of(here, r.back), here};
      s.has_left = s.has_right = true;
      rec.samples.push_back(s);
    }
    CurveSample e;
    e.t = (full.stop == StopKind::none) ? L : t + seg;
    e.p = full.end;
    Sigma here = S->sigma(full.end);
    e.left = TangentVec{1.0, full.back, here};
    e.has_left = true;
    if (full.stop == StopKind::vertex) {
      if (seg <= 1e-15) {
        rec.events.push_back({t, EventKind::stop, "zero-length step at cone point"});
        break;
      }
      double out = here.reduce(full.back + 0.5 * here.length);
      e.right = TangentVec{1.0, out, here};
      e.has_right = true;
      rec.samples.push_back(e);
      rec.events.push_back({e.t, EventKind::vertex, "equal split, cone angle " + num(here.length)});
      x = full.end;
      dir = out;
      t = e.t;
      continue;
    }
    rec.samples.push_back(e);
    if (full.stop == StopKind::boundary) rec.events.push_back({e.t, EventKind::boundary, "trace stops at boundary"});
    break;
  }
  return rec;
}

namespace {

struct ProbeResult {
  double min_turn = std::numeric_limits<double>::infinity();
  double barrier = -std::numeric_limits<double>::infinity();
  double angle_increase = 0;
  double initial_excess = -std::numeric_limits<double>::infinity();
  double stencil = 0;
};

ProbeResult probe(const SpacePtr& S, const CurveRecord& c, const Point& p, const QGCheckOptions& opts) {
  ProbeResult pr;
  const auto& sm = c.samples;
  const std::size_t n = sm.size();
  const double kappa = S->kappa();
  auto o = S->oracle(p);
  std::vector<double> r(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = o->distance(sm[i].p);
    h[i] = rho(kappa, r[i]);
  }
  const std::size_t k = static_cast<std::size_t>(std::max(1, opts.stencil));
  for (std::size_t i = k; i + k < n; ++i) {
    pr.barrier = std::max(pr.barrier, barrier_defect(kappa, 1.0, sm[i - k].t, sm[i].t, sm[i + k].t,
                                                     h[i - k], h[i], h[i + k]));
    pr.stencil = std::max(pr.stencil, sm[i + k].t - sm[i - k].t);
  }

  std::vector<std::pair<double, double>> tr;
  const double rmax = model_diameter(kappa);
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] >= rmax * (1 - 1e-9)) break;
    if (!tr.empty() && sm[i].t <= tr.back().first) continue;
    tr.emplace_back(sm[i].t, r[i]);
  }
  try {
    DevelopOptions dopt;
    dopt.tolerance = opts.tol;
    pr.min_turn = develop_curve(kappa, tr, dopt).min_turn;
  } catch (const DomainError&) {
    pr.min_turn = -std::numeric_limits<double>::infinity();
  }

  double initial = kPi;
  if (r[0] > 0 && sm[0].has_right) {
    DirectionSet up = S->directions_to(sm[0].p, p);
    const Sigma& sg = sm[0].right.sigma;
    if (up.whole) initial = 0;
    for (double a : up.angles) initial = std::min(initial, std::min(kPi, sg.arcdist(a, sm[0].right.angle)));
  }
  double prev = -1;
  for (std::size_t i = 1; i < n; ++i) {
    double t = sm[i].t - sm[0].t;
    if (t <= 0 || (kappa > 0 && t > kPi / std::sqrt(kappa))) continue;
    double ang;
    try {
      ang = comparison_angle(kappa, r[0], r[i], t);
    } catch (const DomainError&) {
      continue;
    }
    if (prev >= 0) pr.angle_increase = std::max(pr.angle_increase, ang - prev);
    prev = ang;
    if (r[0] > 0) pr.initial_excess = std::max(pr.initial_excess, ang - initial);
  }
  return pr;
}

// Metric derivative on one sample interval. A chord that passes close to a
// cone point of angle < 2pi is shorter than the arc although the curve is unit
// speed, so defective pieces are bisected along the curve (bounded work). The
// depth stops where distance rounding would dominate the ratio.
double refined_speed_defect(const Space& S, const CurveRecord& c, double t0, const Point& p0, double t1,
                            const Point& p1) {
  struct Piece {
    double t0, t1;
    Point p0, p1;
    double defect;
  };
  auto make = [&](double a, const Point& pa, double b, const Point& pb) {
    return Piece{a, b, pa, pb, std::abs(S.distance(pa, pb) / (b - a) - 1)};
  };
  auto cmp = [](const Piece& x, const Piece& y) { return x.defect < y.defect; };
  std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> open(cmp);
  std::vector<Piece> done;
  open.push(make(t0, p0, t1, p1));
  int budget = 400;
  while (!open.empty()) {
    Piece q = open.top();
    open.pop();
    const double len = q.t1 - q.t0;
    if (q.defect <= 1e-12 + 1e-15 / len || budget <= 0 || len < (t1 - t0) / 8192) {
      done.push_back(q);
      continue;
    }
    budget -= 2;
    const double tm = 0.5 * (q.t0 + q.t1);
    const Point pm = c.point_at(tm);
    open.push(make(q.t0, q.p0, tm, pm));
    open.push(make(tm, pm, q.t1, q.p1));
  }
  double worst = 0;
  for (const auto& q : done) worst = std::max(worst, q.defect);
  return worst;
}

}  // namespace

QGCheckReport check_quasigeodesic(const SpacePtr& S, const CurveRecord& c, const QGCheckOptions& opts) {
  QGCheckReport rep;
  const auto& sm = c.samples;
  if (sm.size() < 3) throw DomainError("curve needs at least three samples");
  for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
    double dt = sm[i + 1].t - sm[i].t;
    if (dt <= 0) continue;
    double d = std::abs(S->distance(sm[i].p, sm[i + 1].p) / dt - 1);
    if (d > 1e-12 && sm[i].has_right) {
      // Refine along the continuation from sample i; the stored next sample
      // enters only through its offset from that continuation.
      const Point end = S->shoot(sm[i].p, sm[i].right.angle, sm[i].right.norm * dt).end;
      // Keep the best-resolved scale: rounding dominates very short pieces.
      d = std::min(d, std::max(refined_speed_defect(*S, c, sm[i].t, sm[i].p, sm[i + 1].t, end),
                               S->distance(end, sm[i + 1].p) / dt));
    }
    rep.speed_defect = std::max(rep.speed_defect, d);
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<Point> probes;
  for (int i = 0; i < opts.n_probes; ++i) probes.push_back(S->random_point(rng));
  for (const Point& p : corner_probes(*S, c, opts.n_probes)) probes.push_back(p);
  std::vector<std::future<ProbeResult>> jobs;
  for (const auto& p : probes)
    jobs.push_back(std::async(std::launch::async, [&S, &c, p, &opts] { return probe(S, c, p, opts); }));
  for (auto& j : jobs) {
    ProbeResult pr = j.get();
    rep.min_turn = std::min(rep.min_turn, pr.min_turn);
    rep.worst_barrier = std::max(rep.worst_barrier, pr.barrier);
    rep.worst_angle_increase = std::max(rep.worst_angle_increase, pr.angle_increase);
    rep.worst_initial_excess = std::max(rep.worst_initial_excess, pr.initial_excess);
    rep.stencil_width = std::max(rep.stencil_width, pr.stencil);
    ++rep.probes;
  }
  rep.convex = rep.min_turn >= -opts.tol;
  rep.barrier = rep.worst_barrier <= opts.tol;
  rep.monotone = rep.worst_angle_increase <= opts.tol;
  rep.initial = rep.worst_initial_excess <= opts.tol;
  rep.unit_speed = rep.speed_defect <= std::max(opts.tol, 1e-9);
  return rep;
}

EntropyRecord entropy(const CurveRecord& c) {
  EntropyRecord er;
  const auto& sm = c.samples;
  for (std::size_t i = 0; i + 1 < sm.size(); ++i) er.resolution = std::max(er.resolution, sm[i + 1].t - sm[i].t);
  for (std::size_t i = 1; i + 1 < sm.size(); ++i) {
    const auto& s = sm[i];
    if (!s.has_left || !s.has_right)
      throw DomainError("missing tangent at t=" + num(s.t));
    if (s.left.norm == 0 || s.right.norm == 0) break;  // stall: the curve is constant afterwards
    double jump = std::log(s.right.norm) - std::log(s.left.norm);
    if (jump != 0) er.atoms.push_back({s.t, jump});
  }
  for (const auto& a : er.atoms) er.total += a.jump;
  return er;
}

}  // namespace alexgeo
