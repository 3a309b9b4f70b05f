#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "alexgeo/extremal.hpp"
#include "alexgeo/flow.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/radial.hpp"
#include "alexgeo/spaces.hpp"
#include "alexgeo/tight.hpp"

namespace alexgeo::suite {

namespace {

struct Ctx {
  const Options& opts;
  std::mt19937_64 rng;
  Result& out;

  int count(int full, int quick) const { return opts.quick ? quick : full; }
  double U(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  void metric(const std::string& k, double v) { out.metrics.emplace_back(k, v); }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. comparison_angle(model_side(a, c, beta)) == beta.
void model_round_trip(Ctx& c) {
  const int n = c.count(1000, 200);
  double worst = 0;
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const double top = kappa > 0 ? 1.5 : 3.0;
    double w = 0;
    for (int i = 0; i < n; ++i) {
      const double a = c.U(0.1, top), s = c.U(0.1, top), beta = c.U(0.01, kPi - 0.01);
      const double b = model_side(kappa, a, s, beta);
      w = std::max(w, std::abs(comparison_angle(kappa, a, b, s) - beta));
    }
    c.metric("max_error_kappa_" + num(kappa), w);
    worst = std::max(worst, w);
  }
  c.out.pass = worst < 1e-9;
  c.out.summary = "max error " + sci(worst) + " over " + std::to_string(3 * n) + " triples (tol 1e-9)";
}

// 2. Contraction of -|x|^2/2 gradient curves on the plane.
void flow_contraction(Ctx& c) {
  const auto P = make_plane();
  const ExprPtr f = scaled(-0.5, dist_sq(PolarPoint{0, 0}));
  const int pairs = c.count(10, 4);
  std::vector<std::pair<Point, Point>> pts;
  for (int i = 0; i < pairs; ++i)
    pts.push_back({PolarPoint{c.U(0.1, 1), c.U(0, 2 * kPi)}, PolarPoint{c.U(0.1, 1), c.U(0, 2 * kPi)}});
  std::vector<double> err;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    FlowOptions o;
    o.h = h;
    double e = 0;
    for (const auto& [p, q] : pts) {
      const Point a = gradient_curve(f, P, p, 1.0, o).samples.back().p;
      const Point b = gradient_curve(f, P, q, 1.0, o).samples.back().p;
      e = std::max(e, std::abs(P->distance(a, b) - std::exp(-1.0) * P->distance(p, q)));
    }
    err.push_back(e);
    c.metric("error_h_" + num(h), e);
  }
  const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
  c.metric("order_4e-3_2e-3", o1);
  c.metric("order_2e-3_1e-3", o2);
  c.out.pass = err[2] < 1e-2 && o1 >= 1 && o2 >= 1;
  c.out.summary = "error " + sci(err[2]) + " at h=1e-3 (tol 1e-2), observed orders " + sci(o1) + ", " +
                  sci(o2) + " (need >= 1)";
}

// 3. gexp is short; isometric from the apex.
void gexp_shortness(Ctx& c) {
  const int n = c.count(500, 60);
  RadialOptions ro;
  ro.h = 1e-4;
  double worst = -1, apex = 0;
  for (double theta : {kPi / 2, kPi, 1.5 * kPi, 2 * kPi}) {
    const auto C = make_cone(theta);
    const Point o = PolarPoint{1, 0};
    const Sigma sg = C->sigma(o);
    double w = -1;
    for (int i = 0; i < n; ++i) {
      const TangentVec u{c.U(0, 1.5), c.U(0, sg.length), sg}, v{c.U(0, 1.5), c.U(0, sg.length), sg};
      const double d = C->distance(gexp_map(C, o, u, 0, ro), gexp_map(C, o, v, 0, ro));
      w = std::max(w, d - tangent_cone_metric(0, u, v));
    }
    const Point a = PolarPoint{0, 0};
    const Sigma sa = C->sigma(a);
    double wa = 0;
    for (int i = 0; i < n; ++i) {
      const TangentVec u{c.U(0, 1.5), c.U(0, sa.length), sa}, v{c.U(0, 1.5), c.U(0, sa.length), sa};
      const double d = C->distance(gexp_map(C, a, u, 0, ro), gexp_map(C, a, v, 0, ro));
      wa = std::max(wa, std::abs(d - tangent_cone_metric(0, u, v)));
    }
    c.metric("excess_theta_" + num(theta), w);
    c.metric("apex_error_theta_" + num(theta), wa);
    worst = std::max(worst, w);
    apex = std::max(apex, wa);
  }
  c.out.pass = worst <= 1e-3 && apex <= 1e-9;
  c.out.summary = "max |gexp u gexp v| - |uv| = " + sci(worst) + " (tol 1e-3), apex error " + sci(apex) +
                  " (tol 1e-9)";
}

// 4. Radial comparison angle is non-increasing.
void radial_comparison(Ctx& c) {
  const int n = c.count(50, 8);
  RadialOptions ro;
  const double tol = 1e-6 + 10 * ro.h;
  double worst = -1;
  bool ok = true;
  auto run = [&](const SpacePtr& S, int kappa, double T, const std::string& tag, double max_pq) {
    std::vector<double> grid;
    for (int k = 1; k <= 200; ++k) grid.push_back(T * k / 200);
    double w = -1;
    for (int i = 0; i < n; ++i) {
      const Point p = S->random_point(c.rng);
      Point q = S->random_point(c.rng);
      for (int k = 0; k < 100 && S->distance(p, q) > max_pq; ++k) q = S->random_point(c.rng);
      const Sigma sg = S->sigma(p);
      const double xi = sg.closed ? c.U(0, sg.length) : sg.start + c.U(0, sg.length);
      const auto r = verify_radial_comparison(S, p, xi, q, kappa, grid, ro);
      w = std::max({w, r.max_increase, r.max_excess});
      ok = ok && r.pass(tol);
    }
    c.metric("worst_" + tag, w);
    worst = std::max(worst, w);
  };
  run(make_cone(1.5 * kPi), 0, 1.0, "cone", 1e300);
  run(make_regular_tetrahedron(), 0, 1.0, "tetrahedron", 1e300);
  run(make_spindle(1.5 * kPi), 1, 1.5, "spindle", kPi / 2);
  c.out.pass = ok;
  c.out.summary = "worst increase " + sci(worst) + " (tol " + sci(tol) + ") on cone, tetrahedron, spindle";
}

SpacePtr random_tetrahedron(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  auto sub = [](std::array<double, 3> a, std::array<double, 3> b) {
    return std::array<double, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto dot = [](std::array<double, 3> a, std::array<double, 3> b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto cross = [](std::array<double, 3> a, std::array<double, 3> b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                 a[0] * b[1] - a[1] * b[0]};
  };
  const std::vector<std::array<int, 3>> tris{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (;;) {
    std::vector<std::array<double, 3>> v(4);
    for (auto& x : v) x = {U(rng), U(rng), U(rng)};
    double vol = dot(sub(v[1], v[0]), cross(sub(v[2], v[0]), sub(v[3], v[0])));
    if (vol < 0) {
      std::swap(v[1], v[2]);
      vol = -vol;
    }
    if (vol < 0.2) continue;
    bool fat = true;
    for (const auto& t : tris)
      for (int k = 0; k < 3; ++k) {
        const auto a = sub(v[t[(k + 1) % 3]], v[t[k]]), b = sub(v[t[(k + 2) % 3]], v[t[k]]);
        const double ang = std::acos(dot(a, b) / std::sqrt(dot(a, a) * dot(b, b)));
        if (ang < 0.25) fat = false;
      }
    if (!fat) continue;
    MeshInput in;
    in.triangles = tris;
    in.coords = v;
    return make_mesh(in);
  }
}

// 5. Equal-split traces on random tetrahedra through two vertices.
void quasigeodesic_suite(Ctx& c) {
  const int n = c.count(20, 4);
  double turn = 1e300, barrier = -1e300, speed = 0, ent = 0;
  int min_hits = 1 << 30;
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    const SpacePtr S = random_tetrahedron(c.rng);
    const auto& M = dynamic_cast<const PolyhedralSurface&>(*S);
    const int B = static_cast<int>(c.U(0, 4)) % 4;
    const int Cv = (B + 1 + static_cast<int>(c.U(0, 3)) % 3) % 4;
    const Point pb = M.vertex_point(B);
    const double out = S->directions_to(pb, M.vertex_point(Cv)).angles.front();
    const Sigma sb = S->sigma(pb);
    const double beta = sb.reduce(out - sb.length / 2);
    const double diam = S->diameter_bound();
    const double l1 = std::min(0.3 * diam, 0.5 * S->shoot(pb, beta, diam).length);
    const ShootResult start = S->shoot(pb, beta, l1);
    const CurveRecord curve = trace_quasigeodesic(S, start.end, start.back, 5 * diam);
    QGCheckOptions qo;
    qo.n_probes = 20;
    qo.tol = 1e-6;
    qo.seed = c.rng();
    const QGCheckReport r = check_quasigeodesic(S, curve, qo);
    const double mu = std::abs(entropy(curve).total);
    const int hits = static_cast<int>(curve.count(EventKind::vertex));
    turn = std::min(turn, r.min_turn);
    barrier = std::max(barrier, r.worst_barrier);
    speed = std::max(speed, r.speed_defect);
    ent = std::max(ent, mu);
    min_hits = std::min(min_hits, hits);
    ok = ok && r.min_turn >= -1e-6 && r.worst_barrier <= 1e-6 && r.speed_defect <= 1e-9 && mu < 1e-9 &&
         hits >= 2 && r.pass();
  }
  c.metric("min_turn", turn);
  c.metric("worst_barrier", barrier);
  c.metric("speed_defect", speed);
  c.metric("entropy", ent);
  c.metric("min_vertex_hits", min_hits);
  c.out.pass = ok;
  c.out.summary = std::to_string(n) + " tetrahedra: min turn " + sci(turn) + ", barrier " + sci(barrier) +
                  ", speed defect " + sci(speed) + ", |entropy| " + sci(ent) + ", min vertex hits " +
                  std::to_string(min_hits);
}

// 6. Boundary concavity on polygons and caps.
void boundary_concavity(Ctx& c) {
  const int polys = c.count(10, 3);
  double worst_poly = -1e300;
  for (int i = 0; i < polys; ++i) {
    const int k = 3 + static_cast<int>(c.U(0, 6));
    const double a = c.U(0.5, 2), b = c.U(0.5, 2);
    std::vector<double> ang;
    for (;;) {
      ang.clear();
      for (int j = 0; j < k; ++j) ang.push_back(c.U(0, 2 * kPi));
      std::sort(ang.begin(), ang.end());
      bool spread = true;
      for (int j = 0; j < k; ++j) {
        const double gap = j + 1 < k ? ang[j + 1] - ang[j] : ang[0] + 2 * kPi - ang[j];
        if (gap < 0.15 || gap > kPi - 0.15) spread = false;
      }
      if (spread) break;
    }
    std::vector<std::array<double, 2>> v;
    for (double t : ang) v.push_back({a * std::cos(t), b * std::sin(t)});
    const SpacePtr P = make_polygon(v);
    ConcavityOptions co;
    co.n_geodesics = 200;
    co.tol = 1e-9;
    co.seed = c.rng();
    const auto r = check_concavity(dist_boundary(*P), *P, 0.0, Region{P->random_point(c.rng)}, co);
    worst_poly = std::max(worst_poly, r.worst);
  }
  double worst_cap = -1e300, perimeter_excess = -1e300, perimeter_err = 0;
  for (double r0 : {0.5, 1.0, kPi / 2}) {
    const SpacePtr S = make_cap(r0);
    const ScalarField f = [&S](const Point& p) { return std::sin(S->boundary_distance(p)); };
    ConcavityOptions co;
    co.tol = 1e-8;
    const auto chords = random_chords(*S, Region{PolarPoint{0, 0}}, 100, c.rng());
    const auto r = check_barrier(f, *S, 0.0, 1.0, chords, co);
    worst_cap = std::max(worst_cap, r.worst);
    double L = 0;
    const int m = 3600;
    for (int j = 0; j < m; ++j)
      L += S->distance(PolarPoint{r0, 2 * kPi * j / m}, PolarPoint{r0, 2 * kPi * (j + 1) / m});
    perimeter_excess = std::max(perimeter_excess, L - 2 * kPi);
    perimeter_err = std::max(perimeter_err, std::abs(L - 2 * kPi * std::sin(r0)));
  }
  c.metric("polygon_worst_second_difference", worst_poly);
  c.metric("cap_worst_barrier", worst_cap);
  c.metric("perimeter_minus_2pi", perimeter_excess);
  c.metric("perimeter_vs_2pi_sin_r0", perimeter_err);
  c.out.pass = worst_poly <= 1e-9 && worst_cap <= 1e-8 && perimeter_excess <= 0 && perimeter_err < 1e-5;
  c.out.summary = "polygons max dist_bd'' " + sci(worst_poly) + " (tol 1e-9), cap sin(r0-r) defect " +
                  sci(worst_cap) + " (tol 1e-8), perimeter - 2pi " + sci(perimeter_excess);
}

// 7. Polar vectors: <xi,x> + <xi*,x> >= 0.
void milka_polarity(Ctx& c) {
  const int n = c.count(100, 20);
  double worst = 1e300;
  for (double theta : {kPi / 2, kPi, 4.0, 1.5 * kPi, 2 * kPi}) {
    const Sigma sg{theta, true, 0};
    const auto grid = sg.grid(720);
    for (int i = 0; i < n; ++i) {
      const TangentVec xi{c.U(0.1, 2), c.U(0, theta), sg};
      const TangentVec star = polar_vector(xi);
      for (double a : grid) {
        const TangentVec x{1, a, sg};
        worst = std::min(worst, scalar_product(xi, x) + scalar_product(star, x));
      }
    }
  }
  c.metric("min_polar_sum", worst);
  c.out.pass = worst >= -1e-9;
  c.out.summary = "min <xi,x> + <xi*,x> = " + sci(worst) + " over 720 directions (tol -1e-9)";
}

// Random boundary path of the unit square through corners.
std::vector<Point> square_boundary_path(Ctx& c) {
  auto at = [](double s) {
    s = std::fmod(s, 4.0);
    if (s < 1) return PlanarPoint{s, 0};
    if (s < 2) return PlanarPoint{1, s - 1};
    if (s < 3) return PlanarPoint{3 - s, 1};
    return PlanarPoint{0, 4 - s};
  };
  const double s0 = c.U(0, 4), len = c.U(0.5, 3);
  std::vector<Point> pts{at(s0)};
  for (double k = std::floor(s0) + 1; k < s0 + len; k += 1) pts.push_back(at(k));
  pts.push_back(at(s0 + len));
  return pts;
}

// 8. Extremal invariance and boundary geodesics as quasigeodesics.
void extremal_invariance(Ctx& c) {
  ExtremalOptions eo;
  eo.n_funcs = c.count(20, 6);
  eo.seed = c.rng();
  const std::vector<SpacePtr> spaces{make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                                     make_polygon({{0, 0}, {2, 0}, {0.3, 0.6}}),
                                     make_cone(kPi / 2),
                                     make_cone(kPi),
                                     make_regular_tetrahedron(),
                                     make_cap(1.0)};
  double rate = 0;
  int sets = 0;
  bool ok = true;
  for (const auto& S : spaces)
    for (const auto& cand : detect_extremal(S, eo)) {
      if (cand.subset.empty() || cand.subset.whole) continue;
      ++sets;
      rate = std::max(rate, cand.evidence.drift_rate);
      ok = ok && cand.evidence.pass() && cand.evidence.drift_rate < 1e-6;
    }
  const auto sq = spaces.front();
  const int paths = c.count(10, 3);
  double turn = 1e300;
  for (int i = 0; i < paths; ++i) {
    const CurveRecord g = path_curve(sq, square_boundary_path(c), 0.01);
    QGCheckOptions qo;
    qo.tol = 1e-6;
    qo.seed = c.rng();
    const auto r = check_quasigeodesic(sq, g, qo);
    turn = std::min(turn, r.min_turn);
    ok = ok && r.pass();
  }
  c.metric("extremal_sets", sets);
  c.metric("max_drift_rate", rate);
  c.metric("boundary_path_min_turn", turn);
  c.out.pass = ok && sets > 0;
  c.out.summary = std::to_string(sets) + " extremal sets, max drift rate " + sci(rate) +
                  " (tol 1e-6); " + std::to_string(paths) + " square-boundary paths, min turn " + sci(turn);
}

// 9. Inf-convolution of -|x|^2/2 on the plane: f_eps(y) = -|y|^2 / (2 - eps).
void inf_convolution(Ctx& c) {
  const auto P = make_plane();
  const ExprPtr f = scaled(-0.5, dist_sq(PolarPoint{0, 0}));
  const ScalarField F = as_field(f, *P);
  const int g = c.count(50, 12);
  double worst = 0;
  for (double eps : {1.0, 0.5}) {
    InfConvolution ic(F, P, eps);
    double w = 0;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        const double x = -1 + 2.0 * i / (g - 1), y = -1 + 2.0 * j / (g - 1);
        const Point p = PolarPoint{std::hypot(x, y), std::atan2(y, x)};
        w = std::max(w, std::abs(ic(p) + (x * x + y * y) / (2 - eps)));
      }
    c.metric("max_error_eps_" + num(eps), w);
    worst = std::max(worst, w);
  }
  // Measured concavity constant of f_eps relative to lambda = -1.
  std::vector<double> delta;
  for (double eps : {1.0, 0.5, 0.25, 0.125}) {
    InfConvolution ic(F, P, eps);
    const ScalarField fe = [&ic](const Point& p) { return ic(p); };
    ConcavityOptions co;
    co.n_geodesics = c.count(30, 10);
    co.n_samples = 9;
    co.seed = 11;
    const auto r = check_concavity(fe, *P, 0.0, Region{PolarPoint{0, 0}, 0.5}, co);
    delta.push_back(std::abs(r.worst - (-1.0)));
    c.metric("delta_eps_" + num(eps), delta.back());
  }
  bool mono = true;
  for (std::size_t i = 1; i < delta.size(); ++i) mono = mono && delta[i] < delta[i - 1];
  c.out.pass = worst < 1e-6 && mono;
  c.out.summary = "closed-form error " + sci(worst) + " (tol 1e-6); measured delta " + sci(delta[0]) + " -> " +
                  sci(delta.back()) + (mono ? " decreasing" : " NOT decreasing");
}

// 10. Tight maps: main example and the image of three strictly concave coordinates.
void tight_maps(Ctx& c) {
  const auto P = make_plane();
  const Point p = PolarPoint{0, 0};
  const std::vector<ExprPtr> pair{dist(PolarPoint{1, 0}), dist(PolarPoint{1, 2 * kPi / 3})};
  TightOptions to;
  to.n_samples = c.count(500, 100);
  to.seed = c.rng();
  const TightReport t = tight_check(P, pair, Region{p, 0.1}, to);

  const auto sq = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::vector<ExprPtr> coords;
  for (int i = 0; i < 3; ++i) {
    const double a = 2 * kPi * i / 3;
    coords.push_back(build_strictly_concave(sq, PlanarPoint{0.5 + 0.06 * std::cos(a), 0.5 + 0.06 * std::sin(a)},
                                            0.4, 50, 4)
                         .f);
  }
  ImageOptions io;
  io.support_tests = c.count(1000, 150);
  io.critical_samples = c.count(200, 30);
  io.seed = c.rng();
  const ImageReport im = tight_image_study(sq, coords, Region{PlanarPoint{0.5, 0.5}, 0.015}, io);
  c.metric("main_example_sup", t.sup);
  c.metric("main_example_samples", t.samples);
  c.metric("image_tight_sup", im.tight.sup);
  c.metric("support_tests", im.support_tests);
  c.metric("support_failures", im.support_failures);
  c.metric("worst_support_excess", im.worst_support);
  c.metric("critical_samples", im.critical_samples);
  c.metric("g_deviation", im.worst_g_deviation);
  c.metric("lipschitz_min", im.min_ratio);
  c.metric("lipschitz_max", im.max_ratio);
  c.out.pass = t.tight() && t.samples == to.n_samples && im.support_tests == io.support_tests &&
               im.support_failures == 0 && im.worst_g_deviation < 1e-4 && im.critical_samples > 0;
  c.out.summary = "main example sup " + sci(t.sup) + " on " + std::to_string(t.samples) + " samples; Q " +
                  std::to_string(im.support_tests - im.support_failures) + "/" +
                  std::to_string(im.support_tests) + " support tests; G o F deviation " +
                  sci(im.worst_g_deviation) + " on " + std::to_string(im.critical_samples) +
                  " critical samples (tol 1e-4)";
}

// 11. Entropy of the Step-2 construction as eps halves.
void entropy_decay(Ctx& c) {
  const auto C = make_cone(1.5 * kPi);
  const Point p = PolarPoint{1, 0};
  std::vector<double> mu;
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto pq = build_prequasigeodesic(C, p, kPi, eps, 2.0);
    mu.push_back(std::abs(pq.entropy.total));
    c.metric("entropy_eps_" + num(eps), pq.entropy.total);
  }
  const double r1 = mu[1] / mu[0], r2 = mu[2] / mu[1];
  c.metric("ratio_1", r1);
  c.metric("ratio_2", r2);
  c.out.pass = mu[1] < mu[0] && mu[2] < mu[1] && r1 < 0.7 && r2 < 0.7;
  c.out.summary = "|entropy| " + sci(mu[0]) + ", " + sci(mu[1]) + ", " + sci(mu[2]) + " at eps 0.1, 0.05, 0.025; " +
                  "ratios " + sci(r1) + ", " + sci(r2) + " (need < 0.7)";
}

struct Entry {
  const char* name;
  void (*fn)(Ctx&);
};

const Entry kEntries[] = {
    {"model-plane round trip", model_round_trip},
    {"gradient-flow contraction", flow_contraction},
    {"gexp shortness", gexp_shortness},
    {"radial comparison", radial_comparison},
    {"quasigeodesic suite", quasigeodesic_suite},
    {"boundary concavity", boundary_concavity},
    {"polar vectors", milka_polarity},
    {"extremal invariance", extremal_invariance},
    {"inf-convolution oracle", inf_convolution},
    {"tight maps", tight_maps},
    {"pre-quasigeodesic entropy decay", entropy_decay},
};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kEntries)); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) return {};
  return kEntries[id - 1].name;
}

Result run_criterion(int id, const Options& opts) {
  Result r;
  r.id = id;
  r.name = criterion_name(id);
  if (r.name.empty()) {
    r.summary = "no such criterion";
    return r;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Ctx c{opts, std::mt19937_64(sample_seed(opts.seed, static_cast<std::uint64_t>(id))), r};
  try {
    kEntries[id - 1].fn(c);
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<Result> run_all(const Options& opts) {
  std::vector<Result> out;
  for (int id = 1; id <= criterion_count(); ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_line(const Result& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " " << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": "
     << r.summary;
  return os.str();
}

}  // namespace alexgeo::suite
