#include "alexgeo/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "detail.hpp"

namespace alexgeo {

namespace {

struct Local {
  double value = 0;
  DirectionalFn d;
};

DirectionalFn constant_fn(const Sigma& sg, double c) {
  DirectionalFn d;
  d.sigma = sg;
  d.fn = [c](double) { return c; };
  if (sg.euclidean()) d.harmonic = Harmonic{0, 0, c};
  return d;
}

DirectionalFn scale_fn(DirectionalFn d, double k) {
  if (k == 1) return d;
  auto fn = std::move(d.fn);
  d.fn = [fn = std::move(fn), k](double v) { return k * fn(v); };
  if (d.harmonic) d.harmonic = Harmonic{k * d.harmonic->cx, k * d.harmonic->cy, k * d.harmonic->c0};
  return d;
}

DirectionalFn dist_fn(const Space& S, const Point& q, const Point& p, const Sigma& sg, double dist) {
  if (dist <= 1e-14) return constant_fn(sg, 1.0);
  const DirectionSet dirs = detail::leaf_directions(S, q, p);
  DirectionalFn d;
  d.sigma = sg;
  if (dirs.whole) {
    d.fn = [sg](double v) {
      double far = 0.5 * sg.length;
      if (!sg.closed) {
        const double off = sg.arcdist(v, sg.start);
        far = std::max(off, sg.length - off);
      }
      return -std::cos(std::min(far, kPi));
    };
    return d;
  }
  if (dirs.angles.empty()) throw Error("no minimizing direction found");
  const auto xi = dirs.angles;
  d.fn = [sg, xi](double v) {
    double m = std::numeric_limits<double>::infinity();
    for (double a : xi) m = std::min(m, -std::cos(std::min(sg.arcdist(v, a), kPi)));
    return m;
  };
  for (double a : xi) {
    d.kinks.push_back(a);
    d.kinks.push_back(sg.advance(a, std::min(kPi, 0.5 * sg.length)));
  }
  if (xi.size() == 1 && sg.euclidean()) {
    d.harmonic = Harmonic{-std::cos(xi[0]), -std::sin(xi[0]), 0};
  }
  return d;
}

Local local(const ExprPtr& f, const Space& S, const Point& p, const Sigma& sg) {
  switch (f->kind) {
    case NodeKind::dist:
    case NodeKind::dist_sq:
    case NodeKind::rho_dist: {
      const double x = detail::leaf_distance(S, f->q, p).value;
      DirectionalFn d = dist_fn(S, f->q, p, sg, x);
      if (f->kind == NodeKind::dist) return {x, std::move(d)};
      if (f->kind == NodeKind::dist_sq) return {x * x, scale_fn(std::move(d), 2 * x)};
      return {rho(f->kappa, x), scale_fn(std::move(d), sigma(f->kappa, x))};
    }
    case NodeKind::phi_rc: {
      Local in = local(f->children[0], S, p, sg);
      return {phi_rc_value(f->r, f->c, in.value),
              scale_fn(std::move(in.d), phi_rc_derivative(f->r, f->c, in.value))};
    }
    case NodeKind::affine: {
      std::vector<DirectionalFn> parts;
      double value = f->constant;
      bool harmonic = sg.euclidean();
      Harmonic h{0, 0, 0};
      DirectionalFn out;
      out.sigma = sg;
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        Local c = local(f->children[i], S, p, sg);
        value += f->weights[i] * c.value;
        DirectionalFn d = scale_fn(std::move(c.d), f->weights[i]);
        if (d.harmonic) {
          h.cx += d.harmonic->cx;
          h.cy += d.harmonic->cy;
          h.c0 += d.harmonic->c0;
        } else {
          harmonic = false;
        }
        out.kinks.insert(out.kinks.end(), d.kinks.begin(), d.kinks.end());
        parts.push_back(std::move(d));
      }
      out.fn = [parts = std::move(parts)](double v) {
        double s = 0;
        for (const auto& d : parts) s += d.fn(v);
        return s;
      };
      if (harmonic) out.harmonic = h;
      return {value, std::move(out)};
    }
    case NodeKind::min: {
      std::vector<Local> all;
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : f->children) {
        all.push_back(local(c, S, p, sg));
        m = std::min(m, all.back().value);
      }
      const double tol = 1e-12 * std::max(1.0, std::abs(m));
      std::vector<DirectionalFn> active;
      DirectionalFn out;
      out.sigma = sg;
      for (auto& l : all) {
        if (l.value <= m + tol) {
          out.kinks.insert(out.kinks.end(), l.d.kinks.begin(), l.d.kinks.end());
          active.push_back(std::move(l.d));
        }
      }
      if (active.size() == 1) return {m, std::move(active.front())};
      // Crossing directions of harmonic pieces are kinks of the minimum.
      for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j) {
          if (!active[i].harmonic || !active[j].harmonic) continue;
          const double cx = active[i].harmonic->cx - active[j].harmonic->cx;
          const double cy = active[i].harmonic->cy - active[j].harmonic->cy;
          const double c0 = active[i].harmonic->c0 - active[j].harmonic->c0;
          const double amp = std::hypot(cx, cy);
          if (amp <= std::abs(c0) || amp == 0) continue;
          const double base = std::atan2(cy, cx), w = std::acos(-c0 / amp);
          out.kinks.push_back(sg.reduce(wrap_2pi(base + w)));
          out.kinks.push_back(sg.reduce(wrap_2pi(base - w)));
        }
      out.fn = [active = std::move(active)](double v) {
        double r = std::numeric_limits<double>::infinity();
        for (const auto& d : active) r = std::min(r, d.fn(v));
        return r;
      };
      return {m, std::move(out)};
    }
    case NodeKind::theta: return local(f->children[0], S, p, sg);
    case NodeKind::chart_affine: {
      const auto* x = std::get_if<PlanarPoint>(&p);
      if (!x) throw DomainError("chart_affine needs planar coordinates");
      DirectionalFn d;
      d.sigma = sg;
      const double a = f->a, b = f->b;
      d.fn = [a, b](double v) { return a * std::cos(v) + b * std::sin(v); };
      d.harmonic = Harmonic{a, b, 0};
      return {a * x->x + b * x->y + f->constant, std::move(d)};
    }
  }
  throw Error("unknown node");
}

// Position along Sigma used for ordering ties.
double coordinate(const Sigma& sg, double a) {
  return sg.closed ? sg.reduce(a) : sg.arcdist(a, sg.start);
}

double golden_max(const std::function<double(double)>& g, double lo, double hi, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = g(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DirectionalFn differential(const ExprPtr& f, const Space& S, const Point& p0) {
  const Point p = S.canonical(p0);
  const Sigma sg = S.sigma(p);
  DirectionalFn d = local(f, S, p, sg).d;
  for (double& k : d.kinks) k = sg.reduce(k);
  std::sort(d.kinks.begin(), d.kinks.end());
  d.kinks.erase(std::unique(d.kinks.begin(), d.kinks.end()), d.kinks.end());
  return d;
}

TangentVec gradient(const DirectionalFn& d, const GradientOptions& opts) {
  const Sigma& sg = d.sigma;
  TangentVec g;
  g.sigma = sg;
  double best = -std::numeric_limits<double>::infinity();
  double xi = sg.closed ? 0.0 : sg.start;
  if (d.harmonic) {
    const Harmonic h = *d.harmonic;
    const double amp = std::hypot(h.cx, h.cy);
    std::vector<double> cand;
    if (amp > 0) cand.push_back(wrap_2pi(std::atan2(h.cy, h.cx)));
    if (!sg.closed) {
      cand.push_back(sg.start);
      cand.push_back(sg.start + sg.length);
    } else if (amp == 0) {
      cand.push_back(0);
    }
    for (double c : cand) {
      if (!sg.closed && !sg.contains(c, 0)) continue;
      const double v = h.cx * std::cos(c) + h.cy * std::sin(c) + h.c0;
      if (v > best + 1e-15 ||
          (std::abs(v - best) <= 1e-15 && coordinate(sg, c) < coordinate(sg, xi))) {
        best = v;
        xi = c;
      }
    }
  } else {
    std::vector<double> pts = sg.grid(opts.grid);
    pts.insert(pts.end(), d.kinks.begin(), d.kinks.end());
    double at = pts.front();
    for (double a : pts) {
      const double v = d.fn(a);
      if (v > best) {
        best = v;
        at = a;
      }
    }
    const double hstep = sg.length / opts.grid;
    auto along = [&](double s) { return d.fn(sg.advance(at, s)); };
    const double s = golden_max(along, -hstep, hstep, 1e-13);
    const double ref = sg.advance(at, s);
    if (d.fn(ref) > best) {
      best = d.fn(ref);
      at = ref;
    }
    xi = sg.reduce(at);
    for (double a : pts) {
      if (d.fn(a) >= best - 1e-10 && coordinate(sg, a) < coordinate(sg, xi) &&
          sg.arcdist(a, xi) > 1e-9) {
        xi = sg.reduce(a);
      }
    }
    best = d.fn(xi);
  }
  if (best <= opts.zero) {
    g.norm = 0;
    g.angle = sg.closed ? 0.0 : sg.start;
    return g;
  }
  g.norm = best;
  g.angle = sg.reduce(xi);
  const bool linear = d.harmonic && d.harmonic->c0 == 0;
  if (opts.verify && !linear) {
    for (double x : sg.grid(opts.grid)) {
      const double bound = g.norm * std::cos(std::min(sg.arcdist(g.angle, x), kPi));
      if (d.fn(x) > bound + opts.verify_tol) {
        std::ostringstream os;
        os << "gradient inequality fails: d(" << num(x) << ") = " << num(d.fn(x)) << " > "
           << num(bound) << "; maximizer near " << num(g.angle) << " with value " << num(best)
           << " is not unique (differential not concave)";
        throw InvariantBreach(os.str());
      }
    }
  }
  return g;
}

TangentVec gradient(const ExprPtr& f, const Space& S, const Point& p, const GradientOptions& opts) {
  return gradient(differential(f, S, p), opts);
}

SupportReport supporting_check(const DirectionalFn& d, const TangentVec& s, int grid, double tol) {
  SupportReport r;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (double x : d.sigma.grid(grid)) {
    const double sx = s.norm == 0 ? 0.0 : s.norm * std::cos(std::min(d.sigma.arcdist(s.angle, x), kPi));
    const double m = -sx - d.fn(x);
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.worst_angle = x;
    }
  }
  r.supporting = r.worst_margin >= -tol;
  return r;
}

TangentVec polar_vector(const TangentVec& v, double tol) {
  TangentVec w = v;
  if (v.norm == 0) return w;
  const Sigma& sg = v.sigma;
  if (sg.closed) {
    w.angle = sg.reduce(v.angle + kPi);
  } else {
    const double L = sg.length;
    double o = std::fmod(sg.arcdist(v.angle, sg.start) + kPi, 2 * L);
    if (o > L) o = 2 * L - o;
    w.angle = sg.start + o;
  }
  for (double x : sg.grid(720)) {
    const double s = std::cos(std::min(sg.arcdist(v.angle, x), kPi)) +
                     std::cos(std::min(sg.arcdist(w.angle, x), kPi));
    if (v.norm * s < -tol) {
      throw InvariantBreach("polar vector check fails at direction " + num(x));
    }
  }
  return w;
}

}  // namespace alexgeo
