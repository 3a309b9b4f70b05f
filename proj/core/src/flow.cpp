#include "alexgeo/flow.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

CurveRecord integrate(const SpacePtr& S, const Point& p, double t0, double T, const VelocityField& V,
                      const FlowOptions& opts, Provenance prov) {
  if (!(opts.h > 0)) throw DomainError("step h must be positive");
  if (T < t0) throw DomainError("end time before start time");
  CurveRecord rec;
  rec.space = S;
  rec.provenance = prov;
  rec.h = opts.h;

  std::vector<double> marks;
  for (double s : opts.sample_times)
    if (s > t0 && s < T) marks.push_back(s);
  marks.push_back(T);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  Point x = S->canonical(p);
  double t = t0;
  CurveSample first;
  first.t = t0;
  first.p = x;
  rec.samples.push_back(first);
  std::size_t mi = 0;

  auto hold_until_end = [&](double from) {
    for (; mi < marks.size(); ++mi) {
      if (marks[mi] <= from) continue;
      CurveSample s;
      s.t = marks[mi];
      s.p = x;
      s.right = TangentVec{0, 0, S->sigma(x)};
      s.left = s.right;
      s.has_right = s.has_left = true;
      rec.samples.back().right = s.right;
      rec.samples.back().has_right = true;
      rec.samples.push_back(s);
    }
  };

  while (mi < marks.size()) {
    const double target = marks[mi];
    if (target - t <= 1e-15 * std::max(1.0, std::abs(target))) {
      rec.samples.back().t = target;
      t = target;
      ++mi;
      continue;
    }
    TangentVec g;
    try {
      g = V(t, x);
    } catch (const DomainError& e) {
      rec.events.push_back({t, EventKind::truncation, e.what()});
      return rec;
    } catch (const InvariantBreach& e) {
      throw InvariantBreach(std::string(e.what()) + " at t=" + num(t) + " x=" + point_to_string(x));
    }
    if (g.norm < opts.tol_stop) {
      rec.events.push_back({t, EventKind::stop, "gradient below tol_stop"});
      hold_until_end(t);
      return rec;
    }
    double hs = opts.step_control ? std::min(opts.h, opts.step_control(t, x)) : opts.h;
    double dt = (target - t < hs * (1 + 1e-9)) ? target - t : hs;
    double want = g.norm * dt;
    ShootResult r = S->advance(x, g.angle, want);
    double used = dt;
    if (r.stop == StopKind::vertex && r.length < want * (1 - 1e-12)) {
      used = r.length / g.norm;
      if (used <= 1e-15 * opts.h) used = dt;
      rec.events.push_back({t + used, EventKind::vertex, "step split at cone point"});
    } else if (r.stop == StopKind::boundary) {
      rec.events.push_back({t + used, EventKind::boundary, "projected onto boundary"});
    }
    auto& prev = rec.samples.back();
    prev.right = g;
    prev.has_right = true;
    CurveSample s;
    s.t = (used == dt) ? ((dt == target - t) ? target : t + dt) : t + used;
    s.p = r.end;
    s.left = TangentVec{g.norm, r.back, S->sigma(r.end)};
    s.has_left = true;
    rec.samples.push_back(s);
    x = r.end;
    t = s.t;
    if (t >= target) ++mi;
  }
  return rec;
}

CurveRecord gradient_curve(const ExprPtr& f, const SpacePtr& S, const Point& p, double T,
                           const FlowOptions& opts) {
  validate(f, *S);
  VelocityField V = [&](double, const Point& x) { return gradient(f, *S, x, opts.gradient); };
  return integrate(S, p, 0.0, T, V, opts, Provenance::gradient_curve);
}

std::vector<Point> flow_map(const ExprPtr& f, const SpacePtr& S, const std::vector<Point>& points,
                            double t, const FlowOptions& opts) {
  std::vector<Point> out(points.size());
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                      static_cast<unsigned>(points.size())));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < points.size(); i += workers)
        out[i] = gradient_curve(f, S, points[i], t, opts).samples.back().p;
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

DistanceEstimateReport verify_distance_estimates(const ExprPtr& f, const SpacePtr& S, double lambda,
                                                 const std::vector<std::pair<Point, Point>>& pairs,
                                                 const std::vector<double>& t_grid,
                                                 const FlowOptions& opts) {
  DistanceEstimateReport rep;
  if (t_grid.empty()) return rep;
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());
  double T = grid.back();
  FlowOptions o = opts;
  o.sample_times = grid;
  for (const auto& [p0, q0] : pairs) {
    Point p = S->canonical(p0), q = S->canonical(q0);
    CurveRecord a = gradient_curve(f, S, p, T, o);
    CurveRecord b = gradient_curve(f, S, q, T, o);
    double pq = S->distance(p, q);
    double fp = eval(f, *S, p), fq = eval(f, *S, q);
    double gp = gradient(f, *S, p, opts.gradient).norm;
    double bracket = 2 * fp - 2 * fq + lambda * pq * pq;
    auto rhs_sq = [&](double s) {
      double th = theta(lambda, s);
      return pq * pq + bracket * th + gp * gp * th * th;
    };
    std::vector<Point> at, bt;
    for (double t : grid) {
      at.push_back(a.point_at(t));
      bt.push_back(b.point_at(t));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double t = grid[i];
      rep.worst_i = std::min(rep.worst_i, std::exp(lambda * t) * pq - S->distance(at[i], bt[i]));
      rep.worst_ii = std::min(rep.worst_ii, std::sqrt(std::max(0.0, rhs_sq(t))) - S->distance(at[i], q));
      for (std::size_t j = 0; j <= i; ++j) {
        double tp = grid[i], tq = grid[j];
        double rhs = std::exp(2 * lambda * tq) * rhs_sq(tp - tq);
        rep.worst_iii = std::min(rep.worst_iii, std::sqrt(std::max(0.0, rhs)) - S->distance(at[i], bt[j]));
      }
      rep.checks += 2 + static_cast<int>(i) + 1;
    }
  }
  return rep;
}

LengthElementReport length_element_check(const ExprPtr& f, const SpacePtr& S, double lambda,
                                         const CurveRecord& gamma0,
                                         const std::function<double(double)>& tau,
                                         const FlowOptions& opts) {
  LengthElementReport rep;
  const auto& sm = gamma0.samples;
  if (sm.size() < 2) return rep;
  std::vector<Point> g1(sm.size());
  std::vector<double> ta(sm.size()), fv(sm.size()), gn(sm.size());
  for (std::size_t i = 0; i < sm.size(); ++i) {
    ta[i] = tau(sm[i].t);
    if (ta[i] < 0) throw DomainError("tau must be non-negative");
    g1[i] = ta[i] > 0 ? gradient_curve(f, S, sm[i].p, ta[i], opts).samples.back().p : sm[i].p;
    fv[i] = eval(f, *S, sm[i].p);
    gn[i] = gradient(f, *S, sm[i].p, opts.gradient).norm;
  }
  for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
    double ds = S->distance(sm[i].p, sm[i + 1].p);
    if (ds <= 0) continue;
    double dsig = S->distance(g1[i], g1[i + 1]);
    double dtau = ta[i + 1] - ta[i];
    double df = fv[i + 1] - fv[i];
    double g = std::max(gn[i], gn[i + 1]);
    double growth = std::exp(2 * lambda * (lambda >= 0 ? std::max(ta[i], ta[i + 1]) : std::min(ta[i], ta[i + 1])));
    double bound = growth * (ds * ds + 2 * df * dtau + g * g * dtau * dtau);
    rep.worst_margin = std::min(rep.worst_margin, (bound - dsig * dsig) / (ds * ds));
    ++rep.checks;
  }
  return rep;
}

}  // namespace alexgeo
