#include "alexgeo/tight.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/radial.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

namespace {

template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    }));
  for (auto& j : jobs) j.get();
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

// ---- model plane points in ambient coordinates -------------------------

struct V3 {
  double x = 0, y = 0, z = 0;
};

V3 operator+(V3 a, V3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
V3 operator-(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
V3 operator*(double s, V3 a) { return {s * a.x, s * a.y, s * a.z}; }

class Model {
 public:
  explicit Model(int kappa) : k_(kappa) {}

  V3 polar(double rho, double psi) const {
    const double c = std::cos(psi), s = std::sin(psi);
    if (k_ == 0) return {rho * c, rho * s, 0};
    if (k_ == 1) return {std::sin(rho) * c, std::sin(rho) * s, std::cos(rho)};
    return {std::sinh(rho) * c, std::sinh(rho) * s, std::cosh(rho)};
  }

  // Unit tangent at polar(rho, psi) making angle beta with the radial direction.
  V3 tangent(double rho, double psi, double beta) const {
    const double c = std::cos(psi), s = std::sin(psi);
    V3 er, ep{-s, c, 0};
    if (k_ == 0) er = {c, s, 0};
    else if (k_ == 1) er = {std::cos(rho) * c, std::cos(rho) * s, -std::sin(rho)};
    else er = {std::cosh(rho) * c, std::cosh(rho) * s, std::sinh(rho)};
    return std::cos(beta) * er + std::sin(beta) * ep;
  }

  V3 along(V3 x, V3 v, double t) const {
    if (k_ == 0) return x + t * v;
    if (k_ == 1) return std::cos(t) * x + std::sin(t) * v;
    return std::cosh(t) * x + std::sinh(t) * v;
  }

  double dist(V3 a, V3 b) const {
    const V3 d = a - b;
    if (k_ == 0) return std::hypot(d.x, d.y);
    if (k_ == 1) {
      const double n = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
      return 2 * std::asin(std::min(1.0, n / 2));
    }
    const double m = std::max(0.0, d.x * d.x + d.y * d.y - d.z * d.z);
    return 2 * std::asinh(std::sqrt(m) / 2);
  }

 private:
  int k_;
};

void collect_leaves(const ExprPtr& e, std::vector<const Expr*>& out) {
  switch (e->kind) {
    case NodeKind::dist:
    case NodeKind::dist_sq:
    case NodeKind::rho_dist: out.push_back(e.get()); return;
    case NodeKind::chart_affine:
      throw DomainError("controlled concavity needs a function of distances only");
    default:
      for (const auto& c : e->children) collect_leaves(c, out);
  }
}

// Evaluates the expression with leaf distances supplied in leaf order.
double eval_with(const ExprPtr& e, const std::vector<double>& d, std::size_t& k) {
  switch (e->kind) {
    case NodeKind::dist: return d[k++];
    case NodeKind::dist_sq: {
      const double x = d[k++];
      return x * x;
    }
    case NodeKind::rho_dist: return rho(e->kappa, d[k++]);
    case NodeKind::phi_rc: return phi_rc_value(e->r, e->c, eval_with(e->children[0], d, k));
    case NodeKind::affine: {
      double v = e->constant;
      for (std::size_t i = 0; i < e->children.size(); ++i)
        v += e->weights[i] * eval_with(e->children[i], d, k);
      return v;
    }
    case NodeKind::min: {
      double v = std::numeric_limits<double>::infinity();
      for (const auto& c : e->children) v = std::min(v, eval_with(c, d, k));
      return v;
    }
    case NodeKind::theta: return eval_with(e->children[0], d, k);
    case NodeKind::chart_affine: break;
  }
  throw DomainError("controlled concavity needs a function of distances only");
}

const ConvexPolygon& as_polygon(const SpacePtr& S) {
  const auto* P = dynamic_cast<const ConvexPolygon*>(S.get());
  if (!P) throw DomainError("tight image study needs a convex polygon");
  return *P;
}

std::array<double, 2> planar(const Point& p) {
  const auto* q = std::get_if<PlanarPoint>(&p);
  if (!q) throw DomainError("expected chart coordinates");
  return {q->x, q->y};
}

// Nearest point to the origin in the convex hull of up to three plane vectors.
// Returns (weights, norm).
std::pair<std::vector<double>, double> min_norm_hull(const std::vector<std::array<double, 2>>& v) {
  const std::size_t k = v.size();
  std::vector<double> best_w(k, 0.0);
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<double>& w) {
    double x = 0, y = 0;
    for (std::size_t i = 0; i < k; ++i) {
      x += w[i] * v[i][0];
      y += w[i] * v[i][1];
    }
    const double n = std::hypot(x, y);
    if (n < best) {
      best = n;
      best_w = w;
    }
  };
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> w(k, 0.0);
    w[i] = 1;
    consider(w);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dx = v[j][0] - v[i][0], dy = v[j][1] - v[i][1];
      const double L2 = dx * dx + dy * dy;
      if (L2 == 0) continue;
      const double t = std::clamp(-(v[i][0] * dx + v[i][1] * dy) / L2, 0.0, 1.0);
      std::vector<double> w(k, 0.0);
      w[i] = 1 - t;
      w[j] = t;
      consider(w);
    }
  if (k == 3) {
    const double det = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
                       (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
    if (std::abs(det) > 0) {
      const double b1 = ((-v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (-v[0][1])) / det;
      const double b2 = ((v[1][0] - v[0][0]) * (-v[0][1]) - (-v[0][0]) * (v[1][1] - v[0][1])) / det;
      const double b0 = 1 - b1 - b2;
      if (b0 >= 0 && b1 >= 0 && b2 >= 0) consider({b0, b1, b2});
    }
  }
  return {best_w, best};
}

template <class Fn>
double golden_max(Fn f, double a, double b, double tol, double* arg) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (arg) *arg = m;
  return fm;
}

}  // namespace

// ---- strictly concave construction -------------------------------------

StrictlyConcave build_strictly_concave(const SpacePtr& S, const Point& p, double r, double c,
                                       int n, const StrictConcaveOptions& opts) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("radius must be positive");
  if (!std::isfinite(c)) throw DomainError("c must be finite");
  if (n < 1) throw DomainError("need at least one center");
  const Point base = S->canonical(p);
  const Sigma sg = S->sigma(base);

  std::vector<double> dirs;
  if (sg.closed) {
    for (int i = 0; i < n; ++i) dirs.push_back(sg.reduce(opts.phase + sg.length * i / n));
  } else {
    dirs = sg.grid(n);
  }

  StrictlyConcave out;
  std::vector<ExprPtr> terms, dists;
  std::vector<double> actual;
  for (double a : dirs) {
    const Point q = gexp_map(S, base, TangentVec{r, a, sg}, 0);
    out.centers.push_back(q);
    terms.push_back(phi_rc(r, c, dist(q)));
    dists.push_back(dist(q));
    actual.push_back(log_map(*S, base, q).angle);
  }
  out.f = sum(terms);
  if (opts.normalize) out.f = sum({out.f, scaled(1.0, min_of(dists), -r)});

  out.region = Region{base, opts.check_radius > 0 ? opts.check_radius : r / 4};
  ConcavityOptions co;
  co.n_geodesics = opts.n_chords;
  co.seed = opts.seed;
  out.check = check_concavity(out.f, *S, 0.0, out.region, co);
  out.margin = -out.check.worst;
  out.ok = out.check.worst < 0;

  double gap = std::numeric_limits<double>::infinity();
  for (double xi : sg.grid(720)) {
    double m = 0;
    for (double a : actual) m = std::max(m, std::abs(sg.arcdist(xi, a) - kPi / 2));
    gap = std::min(gap, m);
  }
  out.angle_gap = gap;
  const double s2 = std::sin(gap) * std::sin(gap);
  out.suggested_c = s2 > 1e-12 ? std::max(2 * c, 3.0 * n / s2) : std::numeric_limits<double>::infinity();

  out.value_at_p = eval(out.f, *S, base);
  if (opts.normalize) {
    const DirectionalFn d = differential(out.f, *S, base);
    for (double xi : sg.grid(720)) out.differential_defect = std::max(out.differential_defect, std::abs(d(xi) + 1));
  }
  return out;
}

ConvexityReport superlevel_convexity(const SpacePtr& S, const ExprPtr& f, double level,
                                     const Region& region, int n_chords, std::uint64_t seed) {
  ConvexityReport rep;
  std::mt19937_64 rng(seed);
  auto draw = [&](Point& out) {
    for (int k = 0; k < 1000; ++k) {
      const Point x = sample_region(*S, region, rng);
      if (eval(f, *S, x) >= level) {
        out = x;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < n_chords; ++i) {
    Point a, b;
    if (!draw(a) || !draw(b)) break;
    const double d = S->distance(a, b);
    if (d < 1e-12) continue;
    const DirectionSet dirs = S->directions_to(a, b);
    if (dirs.angles.empty()) continue;
    ++rep.chords;
    for (int k = 1; k < 20; ++k) {
      const Point x = S->shoot(a, dirs.angles.front(), d * k / 20).end;
      rep.worst_violation = std::max(rep.worst_violation, level - eval(f, *S, x));
    }
  }
  return rep;
}

// ---- controlled concavity ------------------------------------------------

ControlledConcavityReport label_controlled_concavity(const SpacePtr& S, const ExprPtr& f,
                                                     const Point& p, double lambda, double kappa,
                                                     const ControlledConcavityOptions& opts) {
  if (kappa != -1 && kappa != 0 && kappa != 1) throw DomainError("model curvature must be -1, 0 or 1");
  if (S->kappa() < kappa) throw CurvatureBoundError("space curvature bound is below the model curvature");
  std::vector<const Expr*> leaves;
  collect_leaves(f, leaves);
  const Point base = S->canonical(p);
  const std::size_t N = leaves.size();

  std::vector<double> D(N), ang(N);
  std::vector<std::vector<double>> Q(N, std::vector<double>(N, 0.0));
  for (std::size_t i = 0; i < N; ++i) {
    D[i] = S->distance(base, leaves[i]->q);
    ang[i] = D[i] > 0 ? log_map(*S, base, leaves[i]->q).angle : 0.0;
    for (std::size_t j = 0; j < i; ++j) Q[i][j] = Q[j][i] = S->distance(leaves[i]->q, leaves[j]->q);
  }

  // Base layout: consecutive comparison angles, spare angle shared evenly.
  const Sigma sg = S->sigma(base);
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sg.offset(ang[a]) < sg.offset(ang[b]);
  });
  std::vector<double> psi(N, 0.0);
  if (N > 1) {
    std::vector<double> gaps(N);
    double total = 0;
    for (std::size_t k = 0; k < N; ++k) {
      const std::size_t a = order[k], b = order[(k + 1) % N];
      gaps[k] = (D[a] > 0 && D[b] > 0 && Q[a][b] > 0) ? comparison_angle(kappa, D[a], Q[a][b], D[b]) : 0.0;
      total += gaps[k];
    }
    const double spare = (2 * kPi - total) / static_cast<double>(N);
    double acc = 0;
    for (std::size_t k = 0; k < N; ++k) {
      psi[order[k]] = acc;
      acc += total > 2 * kPi ? gaps[k] * 2 * kPi / total : gaps[k] + spare;
    }
  }

  const Model M(static_cast<int>(kappa));
  ControlledConcavityReport rep;
  rep.lambda = lambda;
  rep.kappa = kappa;
  rep.deltas = opts.deltas;
  rep.worst_defect.assign(opts.deltas.size(), -std::numeric_limits<double>::infinity());
  const V3 origin = M.polar(0, 0);

  for (std::size_t di = 0; di < opts.deltas.size(); ++di) {
    const double delta = opts.deltas[di];
    std::mt19937_64 rng(sample_seed(opts.seed, di));
    for (int cfg = 0; cfg < opts.perturbations; ++cfg) {
      std::vector<V3> qt(N);
      bool ok = false;
      for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
        for (std::size_t i = 0; i < N; ++i) {
          const double ri = std::max(0.0, D[i] + 0.999 * delta * uniform(rng, -1, 1));
          qt[i] = M.polar(ri, psi[i] + delta * uniform(rng, -1, 1));
        }
        ok = true;
        for (std::size_t i = 0; i < N && ok; ++i) {
          if (std::abs(M.dist(origin, qt[i]) - D[i]) >= delta) ok = false;
          for (std::size_t j = 0; j < i && ok; ++j)
            if (M.dist(qt[i], qt[j]) <= Q[i][j] - delta) ok = false;
        }
        if (!ok) ++rep.rejected;
      }
      if (!ok) continue;
      ++rep.configurations;
      auto ft = [&](V3 x) {
        std::vector<double> d(N);
        for (std::size_t i = 0; i < N; ++i) d[i] = M.dist(x, qt[i]);
        std::size_t k = 0;
        return eval_with(f, d, k);
      };
      const double s = opts.stencil;
      for (int c = 0; c < opts.chords_per_config; ++c) {
        const double rho0 = opts.neighborhood * std::sqrt(uniform(rng, 0, 1));
        const double psi0 = uniform(rng, 0, 2 * kPi);
        const V3 x0 = M.polar(rho0, psi0);
        const V3 v = M.tangent(rho0, psi0, uniform(rng, 0, 2 * kPi));
        const double d2 = (ft(M.along(x0, v, -s)) - 2 * ft(x0) + ft(M.along(x0, v, s))) / (s * s);
        rep.worst_defect[di] = std::max(rep.worst_defect[di], d2 - lambda);
      }
    }
  }
  rep.labeled = rep.configurations > 0;
  for (double w : rep.worst_defect) rep.labeled = rep.labeled && w <= opts.eps;
  return rep;
}

// ---- tight maps ----------------------------------------------------------

double regularity(const Space& S, const std::vector<ExprPtr>& funcs, const Point& x, int directions) {
  std::vector<DirectionalFn> d;
  for (const auto& f : funcs) d.push_back(differential(f, S, x));
  const Sigma sg = S.sigma(x);
  double best = -std::numeric_limits<double>::infinity();
  for (double xi : sg.grid(directions)) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& di : d) m = std::min(m, di(xi));
    best = std::max(best, m);
  }
  return best;
}

TightReport tight_check(const SpacePtr& S, const std::vector<ExprPtr>& funcs, const Region& region,
                        const TightOptions& opts) {
  if (funcs.empty()) throw DomainError("tight check needs at least one function");
  for (const auto& f : funcs) validate(f, *S);
  TightReport rep;
  rep.per_sample.resize(static_cast<std::size_t>(std::max(0, opts.n_samples)));
  parallel_for(rep.per_sample.size(), [&](std::size_t k) {
    std::mt19937_64 rng(sample_seed(opts.seed, k));
    TightSample& s = rep.per_sample[k];
    s.x = sample_region(*S, region, rng);
    std::vector<DirectionalFn> d;
    std::vector<TangentVec> g;
    for (const auto& f : funcs) {
      d.push_back(differential(f, *S, s.x));
      g.push_back(gradient(d.back(), opts.gradient));
    }
    for (std::size_t i = 0; i < funcs.size(); ++i)
      for (std::size_t j = 0; j < funcs.size(); ++j) {
        if (i == j) continue;
        const double v = d[i].at(g[j]);
        if (v > s.worst) {
          s.worst = v;
          s.i = static_cast<int>(i);
          s.j = static_cast<int>(j);
        }
      }
    double best = -std::numeric_limits<double>::infinity();
    for (double xi : d.front().sigma.grid(opts.directions)) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& di : d) m = std::min(m, di(xi));
      best = std::max(best, m);
    }
    s.regularity = best;
    s.regular = best > opts.regular_tol;
  });
  for (const auto& s : rep.per_sample) {
    ++rep.samples;
    if (s.regular) ++rep.regular;
    else ++rep.critical;
    if (s.i >= 0 && (rep.worst_i < 0 || s.worst > rep.sup)) {
      rep.sup = s.worst;
      rep.worst_i = s.i;
      rep.worst_j = s.j;
      rep.worst_x = s.x;
    }
  }
  return rep;
}

// ---- tight images --------------------------------------------------------

Point critical_locator(const SpacePtr& S, const std::vector<ExprPtr>& funcs,
                       const std::vector<double>& y, const Region& region, double tol) {
  const ConvexPolygon& P = as_polygon(S);
  if (y.size() != funcs.size()) throw DomainError("level vector and functions differ in size");
  const auto c = planar(S->canonical(region.center));
  const double R = region.radius;
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("region radius must be positive and finite");
  auto g = [&](double x, double yy) {
    const Point p = PlanarPoint{x, yy};
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < funcs.size(); ++i) m = std::min(m, eval(funcs[i], P, p) - y[i]);
    return m;
  };
  auto active = [&](double x, double v) {
    const Point p = PlanarPoint{x, v};
    std::size_t a = 0;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      const double e = eval(funcs[i], P, p) - y[i];
      if (e < m) {
        m = e;
        a = i;
      }
    }
    return a;
  };
  // Golden section, then the crossing of the two active pieces when the
  // maximum sits on a kink; the kink value is then exact to rounding.
  auto inner = [&](double x, double* arg) {
    const double w = std::sqrt(std::max(0.0, R * R - (x - c[0]) * (x - c[0])));
    if (w <= tol) {
      if (arg) *arg = c[1];
      return g(x, c[1]);
    }
    const double lo = c[1] - w, hi = c[1] + w;
    double v = c[1];
    double best = golden_max([&](double t) { return g(x, t); }, lo, hi, tol, &v);
    const double step = std::max(4 * tol, 1e-12);
    double a = std::max(lo, v - step), b = std::min(hi, v + step);
    const std::size_t ia = active(x, a), ib = active(x, b);
    if (ia != ib) {
      auto diff = [&](double t) {
        const Point p = PlanarPoint{x, t};
        return (eval(funcs[ia], P, p) - y[ia]) - (eval(funcs[ib], P, p) - y[ib]);
      };
      double da = diff(a);
      for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double dm = diff(m);
        if ((dm > 0) == (da > 0)) {
          a = m;
          da = dm;
        } else {
          b = m;
        }
      }
      const double m = 0.5 * (a + b);
      const double gm = g(x, m);
      if (gm >= best) {
        best = gm;
        v = m;
      }
    }
    if (arg) *arg = v;
    return best;
  };
  double bx = c[0], best_v = c[1];
  golden_max([&](double x) { return inner(x, nullptr); }, c[0] - R, c[0] + R, tol, &bx);
  inner(bx, &best_v);
  return PlanarPoint{bx, best_v};
}

std::string ImageReport::to_csv() const {
  std::ostringstream os;
  os << "x,y";
  const std::size_t k = cloud.empty() ? 0 : cloud.front().F.size();
  for (std::size_t i = 0; i < k; ++i) os << ",F" << i;
  os << "\n";
  for (const auto& s : cloud) {
    os << num(s.x[0]) << "," << num(s.x[1]);
    for (double v : s.F) os << "," << num(v);
    os << "\n";
  }
  return os.str();
}

ImageReport tight_image_study(const SpacePtr& S, const std::vector<ExprPtr>& funcs,
                              const Region& region, const ImageOptions& opts) {
  const ConvexPolygon& P = as_polygon(S);
  if (funcs.empty() || funcs.size() > 3) throw DomainError("tight image study takes 1 to 3 coordinates");
  for (const auto& f : funcs) validate(f, P);
  const Point center = S->canonical(region.center);
  const auto c = planar(center);
  const double R = region.radius;
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("region radius must be positive and finite");
  if (P.boundary_distance(center) < R) throw DomainError("region must lie inside the polygon");
  const std::size_t k = funcs.size();

  ImageReport rep;
  rep.l = static_cast<int>(k) - 1;
  const Region inner_region{center, R};

  // Hypothesis: every coordinate strictly concave on the region.
  for (std::size_t i = 0; i < k; ++i) {
    ConcavityOptions co;
    co.seed = sample_seed(opts.seed, 100 + i);
    const ConcavityReport cr = check_concavity(funcs[i], P, 0.0, inner_region, co);
    rep.concavity_margin.push_back(-cr.worst);
    if (cr.worst >= -opts.concavity_tol)
      throw DomainError("coordinate " + std::to_string(i) +
                        " is not strictly concave on the region (max second difference " +
                        num(cr.worst) + ")");
  }

  TightOptions to;
  to.n_samples = 200;
  to.seed = opts.seed;
  rep.tight = tight_check(S, funcs, inner_region, to);

  auto Fv = [&](std::array<double, 2> x) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = eval(funcs[i], P, PlanarPoint{x[0], x[1]});
    return v;
  };
  auto random_in_disc = [&](std::mt19937_64& rng) {
    const double a = uniform(rng, 0, 2 * kPi), s = R * std::sqrt(uniform(rng, 0, 1));
    return std::array<double, 2>{c[0] + s * std::cos(a), c[1] + s * std::sin(a)};
  };

  const int n = std::max(2, opts.grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::array<double, 2> x{c[0] - R + 2 * R * i / (n - 1), c[1] - R + 2 * R * j / (n - 1)};
      if (std::hypot(x[0] - c[0], x[1] - c[1]) > R) continue;
      rep.cloud.push_back({x, {}});
    }
  parallel_for(rep.cloud.size(), [&](std::size_t i) { rep.cloud[i].F = Fv(rep.cloud[i].x); });

  std::vector<double> lo(k, std::numeric_limits<double>::infinity()), hi(k, -lo[0]);
  for (const auto& s : rep.cloud)
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = std::min(lo[i], s.F[i]);
      hi[i] = std::max(hi[i], s.F[i]);
    }

  // Chart gradients as plane vectors.
  auto grads = [&](std::array<double, 2> x) {
    std::vector<std::array<double, 2>> g;
    for (const auto& f : funcs) {
      const TangentVec v = gradient(f, P, PlanarPoint{x[0], x[1]});
      g.push_back({v.norm * std::cos(v.angle), v.norm * std::sin(v.angle)});
    }
    return g;
  };

  // A critical point from a random level: G(F(z) + u).
  auto critical_point = [&](std::mt19937_64& rng, std::array<double, 2>& x) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      std::vector<double> y = Fv(random_in_disc(rng));
      if (k > 1)
        for (std::size_t i = 0; i < k; ++i) y[i] += 0.25 * (hi[i] - lo[i]) * uniform(rng, -1, 1);
      x = planar(critical_locator(S, funcs, y, inner_region, opts.argmax_tol));
      if (std::hypot(x[0] - c[0], x[1] - c[1]) < R * (1 - 1e-3)) return true;
    }
    return false;
  };

  struct SupportResult {
    bool done = false;
    bool fail = false;
    double excess = -std::numeric_limits<double>::infinity();
  };
  std::vector<SupportResult> sup(static_cast<std::size_t>(std::max(0, opts.support_tests)));
  parallel_for(sup.size(), [&](std::size_t t) {
    std::mt19937_64 rng(sample_seed(opts.seed, 1000 + t));
    std::array<double, 2> x;
    if (!critical_point(rng, x)) return;
    sup[t].done = true;
    const auto g = grads(x);
    double gmax = 0;
    for (const auto& v : g) gmax = std::max(gmax, std::hypot(v[0], v[1]));
    const auto [w, eta] = min_norm_hull(g);
    if (eta > opts.critical_tol * std::max(1.0, gmax)) {
      sup[t].fail = true;
      return;
    }
    const std::vector<double> Fx = Fv(x);
    double hx = 0;
    for (std::size_t i = 0; i < k; ++i) hx += w[i] * Fx[i];
    // A concave function with gradient norm eta at x stays below hx + eta |x x'|.
    for (const auto& s : rep.cloud) {
      double h = 0;
      for (std::size_t i = 0; i < k; ++i) h += w[i] * s.F[i];
      const double e = h - hx - eta * std::hypot(s.x[0] - x[0], s.x[1] - x[1]);
      sup[t].excess = std::max(sup[t].excess, e);
    }
    if (sup[t].excess > 1e-10 * (1 + std::abs(hx))) sup[t].fail = true;
  });
  for (const auto& s : sup) {
    if (!s.done) continue;
    ++rep.support_tests;
    if (s.fail) ++rep.support_failures;
    rep.worst_support = std::max(rep.worst_support, s.excess);
  }

  // Coordinatewise F along chart segments (geodesics) stays above the chord.
  {
    std::mt19937_64 rng(sample_seed(opts.seed, 7));
    for (int t = 0; t < 200; ++t) {
      const auto a = random_in_disc(rng), b = random_in_disc(rng);
      const auto Fa = Fv(a), Fb = Fv(b);
      for (int j = 1; j < 10; ++j) {
        const double s = j / 10.0;
        const auto Fm = Fv({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
        for (std::size_t i = 0; i < k; ++i)
          rep.chord_worst = std::max(rep.chord_worst, (1 - s) * Fa[i] + s * Fb[i] - Fm[i]);
      }
    }
  }

  // G o F = id on critical samples.
  std::vector<std::array<double, 2>> crit(static_cast<std::size_t>(std::max(0, opts.critical_samples)));
  std::vector<double> dev(crit.size(), -1);
  parallel_for(crit.size(), [&](std::size_t t) {
    std::mt19937_64 rng(sample_seed(opts.seed, 5000 + t));
    if (!critical_point(rng, crit[t])) return;
    const auto back = planar(critical_locator(S, funcs, Fv(crit[t]), inner_region, opts.argmax_tol));
    dev[t] = std::hypot(back[0] - crit[t][0], back[1] - crit[t][1]);
  });
  std::vector<std::array<double, 2>> M;
  for (std::size_t t = 0; t < crit.size(); ++t) {
    if (dev[t] < 0) continue;
    ++rep.critical_samples;
    rep.worst_g_deviation = std::max(rep.worst_g_deviation, dev[t]);
    M.push_back(crit[t]);
  }

  // Lipschitz ratios of F and of its coordinate projections on critical pairs.
  rep.projection_ratios.assign(k > 1 ? k : 0, {std::numeric_limits<double>::infinity(), 0.0});
  int pairs = 0;
  for (std::size_t a = 0; a < M.size() && pairs < opts.lipschitz_pairs; ++a)
    for (std::size_t b = a + 1; b < M.size() && pairs < opts.lipschitz_pairs; ++b) {
      const double d = std::hypot(M[a][0] - M[b][0], M[a][1] - M[b][1]);
      if (d < 1e-9 || d > 2 * R * opts.lipschitz_scale * 5) continue;
      ++pairs;
      const auto Fa = Fv(M[a]), Fb = Fv(M[b]);
      double all = 0;
      for (std::size_t i = 0; i < k; ++i) all += (Fa[i] - Fb[i]) * (Fa[i] - Fb[i]);
      rep.min_ratio = std::min(rep.min_ratio, std::sqrt(all) / d);
      rep.max_ratio = std::max(rep.max_ratio, std::sqrt(all) / d);
      for (std::size_t drop = 0; drop < rep.projection_ratios.size(); ++drop) {
        const double v = (Fa[drop] - Fb[drop]) * (Fa[drop] - Fb[drop]);
        const double r = std::sqrt(std::max(0.0, all - v)) / d;
        rep.projection_ratios[drop][0] = std::min(rep.projection_ratios[drop][0], r);
        rep.projection_ratios[drop][1] = std::max(rep.projection_ratios[drop][1], r);
      }
    }
  return rep;
}

}  // namespace alexgeo
