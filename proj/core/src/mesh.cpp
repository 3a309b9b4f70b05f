#include <algorithm>
#include <cmath>
#include <map>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

using Vec = PolyhedralSurface::Vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
double len(Vec a) { return std::hypot(a.x, a.y); }
double ang(Vec a) { return std::atan2(a.y, a.x); }
Vec rot(Vec a, double w) {
  const double c = std::cos(w), s = std::sin(w);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

double seg_dist(Vec p, Vec a, Vec b) {
  const Vec d = b - a;
  const double dd = dot(d, d);
  double t = dd > 0 ? dot(p - a, d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return len(p - (a + t * d));
}

const MeshPoint& meshpt(const Point& p) {
  const auto* m = std::get_if<MeshPoint>(&p);
  if (!m) throw DomainError("expected mesh point {face, bary}");
  return *m;
}

void push_unique(DirectionSet& out, const Sigma& sg, double a) {
  for (double b : out.angles) {
    if (sg.arcdist(a, b) < 1e-9) return;
  }
  out.angles.push_back(a);
}

}  // namespace

// Exact unfolding of shortest paths from a source up to a crossing depth.
// Each window is the image of the source in some face frame together with
// the visible part of the edge it entered through.
class MeshField {
 public:
  struct Window {
    int face = 0;
    int entry = -1;
    Vec src, L, R;
    int root_face = 0;
    double rot = 0;  // face frame -> root frame
    Vec shift;
    int depth = 0;
  };
  struct Hit {
    double d;
    int window;
    int face;
    Vec q;
  };
  struct Query {
    double best = kInf;
    double error = 0;
    std::vector<Hit> hits;
  };

  MeshField(const PolyhedralSurface& S, const MeshPoint& src, double radius)
      : S_(S), src_(src), radius_(radius), by_face_(S.num_faces()) {
    for (const auto& [f, P] : S.reps(src)) {
      Window w;
      w.face = f;
      w.src = w.L = w.R = P;
      w.root_face = f;
      add(w);
    }
    const double scale = S.scale_;
    for (std::size_t i = 0; i < win_.size(); ++i) {
      if (win_.size() > 4000000) {
        throw Error("window budget exhausted; lower the unfolding depth");
      }
      const Window w = win_[i];
      const auto& F = S.faces_[static_cast<std::size_t>(w.face)];
      for (int e = 0; e < 3; ++e) {
        if (e == w.entry) continue;
        const Vec E0 = F.pos[e], E1 = F.pos[(e + 1) % 3], D = E1 - E0;
        double lo = 0, hi = 1;
        if (w.entry < 0) {
          if (seg_dist(w.src, E0, E1) <= 1e-13 * scale) continue;
        } else {
          Vec a = w.L - w.src, b = w.R - w.src;
          if (cross(a, b) < 0) std::swap(a, b);
          const double tol = 0;
          bool empty = false;
          auto clip = [&](double c0, double c1) {
            if (std::abs(c1) < 1e-300) {
              if (c0 < -tol) empty = true;
              return;
            }
            const double s = (-tol - c0) / c1;
            if (c1 > 0) {
              lo = std::max(lo, s);
            } else {
              hi = std::min(hi, s);
            }
          };
          clip(cross(a, E0 - w.src), cross(a, D));
          clip(cross(E0 - w.src, b), cross(D, b));
          if (empty || hi - lo <= 1e-12) continue;
        }
        Vec Xlo = E0 + lo * D, Xhi = E0 + hi * D;
        const double lb = seg_dist(w.src, Xlo, Xhi);
        if (lb > radius_ + 1e-12 * scale) continue;
        if (w.depth + 1 > S.opts_.max_depth) {
          cut_lb_ = std::min(cut_lb_, lb);
          continue;
        }
        const int h = F.nbr[e], j = F.nbr_edge[e];
        const auto& H = S.faces_[static_cast<std::size_t>(h)];
        Window c;
        c.face = h;
        c.entry = j;
        c.src = w.src;
        S.across(w.face, e, c.src);
        S.across(w.face, e, Xlo);
        S.across(w.face, e, Xhi);
        c.L = Xlo;
        c.R = Xhi;
        c.root_face = w.root_face;
        c.depth = w.depth + 1;
        const double om = S.across_angle(w.face, e);
        // x_g = R(-om)(x_h - H.pos[j+1]) + F.pos[e]; then into the root frame.
        c.rot = w.rot - om;
        c.shift = rot(F.pos[e] - rot(H.pos[(j + 1) % 3], -om), w.rot) + w.shift;
        add(c);
      }
    }
  }

  Query query(const MeshPoint& q) const {
    Query out;
    std::vector<Hit> all;
    for (const auto& [f, Q] : S_.reps(q)) {
      for (int wi : by_face_[static_cast<std::size_t>(f)]) {
        const Window& w = win_[static_cast<std::size_t>(wi)];
        const Vec v = Q - w.src;
        if (w.entry >= 0) {
          Vec a = w.L - w.src, b = w.R - w.src;
          if (cross(a, b) < 0) std::swap(a, b);
          const double lv = len(v);
          if (cross(a, v) < -1e-10 * len(a) * lv || cross(v, b) < -1e-10 * len(b) * lv) continue;
        }
        all.push_back({len(v), wi, f, Q});
      }
    }
    for (const auto& h : all) out.best = std::min(out.best, h.d);
    const double tie = 1e-9 * std::max(1.0, out.best);
    for (const auto& h : all) {
      if (h.d <= out.best + tie) out.hits.push_back(h);
    }
    if (cut_lb_ < out.best) out.error = out.best - cut_lb_;
    return out;
  }

  DirectionSet at_source(const Query& qr) const {
    DirectionSet out;
    const Sigma sg = S_.sigma(src_);
    for (const auto& h : qr.hits) {
      if (h.d <= 0) continue;
      const Window& w = win_[static_cast<std::size_t>(h.window)];
      const double a = ang(rot(h.q - w.src, w.rot));
      push_unique(out, sg, S_.frame_to_sigma(src_, w.root_face, a));
    }
    return out;
  }

  DirectionSet at_target(const MeshPoint& q, const Query& qr) const {
    DirectionSet out;
    const Sigma sg = S_.sigma(q);
    for (const auto& h : qr.hits) {
      if (h.d <= 0) continue;
      const Window& w = win_[static_cast<std::size_t>(h.window)];
      push_unique(out, sg, S_.frame_to_sigma(q, h.face, ang(w.src - h.q)));
    }
    return out;
  }

  const MeshPoint& source() const { return src_; }
  std::size_t size() const { return win_.size(); }

 private:
  void add(const Window& w) {
    by_face_[static_cast<std::size_t>(w.face)].push_back(static_cast<int>(win_.size()));
    win_.push_back(w);
  }

  const PolyhedralSurface& S_;
  MeshPoint src_;
  double radius_;
  std::vector<Window> win_;
  std::vector<std::vector<int>> by_face_;
  double cut_lb_ = kInf;
};

namespace {

class MeshOracle final : public DistanceOracle {
 public:
  MeshOracle(std::shared_ptr<const PolyhedralSurface> s, std::shared_ptr<const MeshField> f)
      : s_(std::move(s)), f_(std::move(f)), src_(f_->source()) {}
  DistanceResult certified(const Point& x) const override {
    const MeshPoint q = meshpt(s_->canonical(x));
    const auto r = f_->query(q);
    return {r.best, r.error, r.best};
  }
  DirectionSet directions_toward_source(const Point& x) const override {
    const MeshPoint q = meshpt(s_->canonical(x));
    return f_->at_target(q, f_->query(q));
  }
  const Point& source() const override { return src_; }

 private:
  std::shared_ptr<const PolyhedralSurface> s_;
  std::shared_ptr<const MeshField> f_;
  Point src_;
};

}  // namespace

PolyhedralSurface::PolyhedralSurface(const MeshInput& in, MeshOptions opts)
    : coords_(in.coords), opts_(opts) {
  const auto& T = in.triangles;
  if (T.size() < 2) throw ParseError("mesh needs at least two triangles", "triangles");
  int nv = 0;
  for (std::size_t f = 0; f < T.size(); ++f) {
    const std::string loc = "triangles[" + std::to_string(f) + "]";
    for (int k = 0; k < 3; ++k) {
      if (T[f][k] < 0) throw ParseError("negative vertex index", loc);
      nv = std::max(nv, T[f][k] + 1);
    }
    if (T[f][0] == T[f][1] || T[f][1] == T[f][2] || T[f][0] == T[f][2]) {
      throw ParseError("repeated vertex in triangle", loc);
    }
  }
  if (!coords_.empty() && static_cast<int>(coords_.size()) < nv) {
    throw ParseError("triangle references vertex beyond coords", "coords");
  }

  std::map<std::pair<int, int>, double> lengths;
  if (coords_.empty()) {
    for (std::size_t i = 0; i < in.edge_lengths.size(); ++i) {
      auto [a, b, l] = in.edge_lengths[i];
      const std::string loc = "edge_lengths[" + std::to_string(i) + "]";
      if (!(l > 0) || !std::isfinite(l)) throw ParseError("edge length must be positive", loc);
      lengths[{std::min(a, b), std::max(a, b)}] = l;
    }
  }
  auto edge_len = [&](int a, int b, std::size_t f) {
    if (!coords_.empty()) {
      const auto& p = coords_[static_cast<std::size_t>(a)];
      const auto& q = coords_[static_cast<std::size_t>(b)];
      return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                       (p[2] - q[2]) * (p[2] - q[2]));
    }
    auto it = lengths.find({std::min(a, b), std::max(a, b)});
    if (it == lengths.end()) {
      throw ParseError("missing length for edge (" + std::to_string(a) + "," +
                           std::to_string(b) + ")",
                       "triangles[" + std::to_string(f) + "]");
    }
    return it->second;
  };

  faces_.resize(T.size());
  scale_ = 0;
  std::map<std::pair<int, int>, std::pair<int, int>> directed;
  for (std::size_t f = 0; f < T.size(); ++f) {
    Face& F = faces_[f];
    F.v = T[f];
    const std::string loc = "triangles[" + std::to_string(f) + "]";
    for (int k = 0; k < 3; ++k) {
      F.len[k] = edge_len(F.v[k], F.v[(k + 1) % 3], f);
      scale_ = std::max(scale_, F.len[k]);
      auto key = std::make_pair(F.v[k], F.v[(k + 1) % 3]);
      if (!directed.emplace(key, std::make_pair(static_cast<int>(f), k)).second) {
        throw ParseError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                             ") used twice in the same direction (non-manifold or inconsistent orientation)",
                         loc);
      }
    }
    const double l0 = F.len[0], l1 = F.len[1], l2 = F.len[2];
    const double m = std::max({l0, l1, l2});
    if (l0 >= l1 + l2 - 1e-12 * m || l1 >= l0 + l2 - 1e-12 * m || l2 >= l0 + l1 - 1e-12 * m) {
      throw ParseError("triangle inequality fails", loc);
    }
    const double x = (l0 * l0 + l2 * l2 - l1 * l1) / (2 * l0);
    const double y = std::sqrt(std::max(0.0, l2 * l2 - x * x));
    F.pos = {Vec{0, 0}, Vec{l0, 0}, Vec{x, y}};
    for (int k = 0; k < 3; ++k) {
      const Vec a = F.pos[(k + 1) % 3] - F.pos[k], b = F.pos[(k + 2) % 3] - F.pos[k];
      F.angle[k] = std::atan2(cross(a, b), dot(a, b));
    }
    F.area = 0.5 * l0 * y;
  }
  for (std::size_t f = 0; f < T.size(); ++f) {
    Face& F = faces_[f];
    for (int k = 0; k < 3; ++k) {
      auto it = directed.find({F.v[(k + 1) % 3], F.v[k]});
      if (it == directed.end()) {
        throw ParseError("edge (" + std::to_string(F.v[k]) + "," + std::to_string(F.v[(k + 1) % 3]) +
                             ") has a single face; the mesh must be closed",
                         "triangles[" + std::to_string(f) + "]");
      }
      F.nbr[k] = it->second.first;
      F.nbr_edge[k] = it->second.second;
    }
  }

  std::vector<std::vector<std::pair<int, int>>> at(static_cast<std::size_t>(nv));
  for (std::size_t f = 0; f < faces_.size(); ++f)
    for (int k = 0; k < 3; ++k) at[static_cast<std::size_t>(faces_[f].v[k])].push_back({static_cast<int>(f), k});
  fans_.resize(static_cast<std::size_t>(nv));
  cone_.resize(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const auto& list = at[static_cast<std::size_t>(v)];
    if (list.empty()) throw ParseError("vertex " + std::to_string(v) + " is not used", "triangles");
    auto cur = list.front();
    double off = 0;
    auto& fan = fans_[static_cast<std::size_t>(v)];
    do {
      fan.push_back({cur.first, cur.second, off});
      const Face& F = faces_[static_cast<std::size_t>(cur.first)];
      off += F.angle[cur.second];
      const int e = (cur.second + 2) % 3;
      cur = {F.nbr[e], F.nbr_edge[e]};
    } while (cur != list.front() && fan.size() <= list.size());
    if (fan.size() != list.size()) {
      throw ParseError("vertex " + std::to_string(v) + " is not a manifold vertex", "triangles");
    }
    cone_[static_cast<std::size_t>(v)] = off;
    if (off > 2 * kPi + 1e-9) {
      throw CurvatureBoundError("vertex " + std::to_string(v) + " has cone angle " + num(off) +
                                " > 2pi");
    }
  }
  build_graph();
}

PolyhedralSurface::~PolyhedralSurface() = default;

std::string PolyhedralSurface::name() const {
  return "mesh(" + std::to_string(faces_.size()) + " faces)";
}

void PolyhedralSurface::across(int f, int k, Vec& x) const {
  const Face& F = faces_[static_cast<std::size_t>(f)];
  const Face& G = faces_[static_cast<std::size_t>(F.nbr[k])];
  const int j = F.nbr_edge[k];
  x = rot(x - F.pos[k], across_angle(f, k)) + G.pos[(j + 1) % 3];
}

double PolyhedralSurface::across_angle(int f, int k) const {
  const Face& F = faces_[static_cast<std::size_t>(f)];
  const Face& G = faces_[static_cast<std::size_t>(F.nbr[k])];
  const int j = F.nbr_edge[k];
  return ang(G.pos[j] - G.pos[(j + 1) % 3]) - ang(F.pos[(k + 1) % 3] - F.pos[k]);
}

Vec PolyhedralSurface::position(const MeshPoint& p) const {
  const Face& F = faces_[static_cast<std::size_t>(p.face)];
  return p.bary[0] * F.pos[0] + p.bary[1] * F.pos[1] + p.bary[2] * F.pos[2];
}

MeshPoint PolyhedralSurface::from_position(int f, Vec x) const {
  const Face& F = faces_[static_cast<std::size_t>(f)];
  const double b2 = x.y / F.pos[2].y;
  const double b1 = (x.x - b2 * F.pos[2].x) / F.pos[1].x;
  MeshPoint m{f, {1 - b1 - b2, b1, b2}};
  for (double& b : m.bary) b = std::max(b, 0.0);
  return meshpt(canonical(m));
}

Point PolyhedralSurface::vertex_point(int v) const {
  const Corner& c = fans_[static_cast<std::size_t>(v)].front();
  MeshPoint m{c.face, {0, 0, 0}};
  m.bary[static_cast<std::size_t>(c.corner)] = 1;
  return m;
}

Point PolyhedralSurface::canonical(const Point& p0) const {
  MeshPoint m = meshpt(p0);
  if (m.face < 0 || m.face >= static_cast<int>(faces_.size())) {
    throw DomainError("face index " + std::to_string(m.face) + " out of range");
  }
  double sum = 0;
  for (double b : m.bary) {
    if (!std::isfinite(b) || b < -1e-9) throw DomainError("barycentric coordinate outside [0,1]");
    sum += std::max(b, 0.0);
  }
  if (std::abs(sum - 1) > 1e-6) throw DomainError("barycentric coordinates must sum to 1");
  for (double& b : m.bary) b = std::max(b, 0.0) / sum;
  int zeros = 0, z = -1, one = -1;
  for (int k = 0; k < 3; ++k) {
    if (m.bary[k] < 1e-12) {
      m.bary[k] = 0;
      ++zeros;
      z = k;
    } else {
      one = k;
    }
  }
  const double s2 = m.bary[0] + m.bary[1] + m.bary[2];
  for (double& b : m.bary) b /= s2;
  const Face& F = faces_[static_cast<std::size_t>(m.face)];
  if (zeros == 2) return vertex_point(F.v[one]);
  if (zeros == 1) {
    const int k = (z + 1) % 3;
    const int g = F.nbr[k];
    if (g < m.face) {
      const int j = F.nbr_edge[k];
      MeshPoint n{g, {0, 0, 0}};
      n.bary[j] = m.bary[(k + 1) % 3];
      n.bary[(j + 1) % 3] = m.bary[k];
      return n;
    }
  }
  return m;
}

int PolyhedralSurface::vertex_of(const Point& p, double) const {
  const MeshPoint m = meshpt(canonical(p));
  for (int k = 0; k < 3; ++k) {
    if (m.bary[k] == 1) return faces_[static_cast<std::size_t>(m.face)].v[k];
  }
  return -1;
}

std::vector<std::pair<int, Vec>> PolyhedralSurface::reps(const MeshPoint& p) const {
  std::vector<std::pair<int, Vec>> out;
  const Face& F = faces_[static_cast<std::size_t>(p.face)];
  for (int k = 0; k < 3; ++k) {
    if (p.bary[k] == 1) {
      for (const Corner& c : fans_[static_cast<std::size_t>(F.v[k])]) {
        out.push_back({c.face, faces_[static_cast<std::size_t>(c.face)].pos[c.corner]});
      }
      return out;
    }
  }
  const Vec P = position(p);
  out.push_back({p.face, P});
  for (int z = 0; z < 3; ++z) {
    if (p.bary[z] == 0) {
      const int k = (z + 1) % 3;
      Vec Q = P;
      across(p.face, k, Q);
      out.push_back({F.nbr[k], Q});
    }
  }
  return out;
}

Sigma PolyhedralSurface::sigma(const Point& p0) const {
  const int v = vertex_of(p0);
  if (v >= 0) return Sigma{cone_[static_cast<std::size_t>(v)], true, 0};
  return Sigma{};
}

double PolyhedralSurface::frame_to_sigma(const MeshPoint& p, int f, double a) const {
  const Face& P = faces_[static_cast<std::size_t>(p.face)];
  for (int k = 0; k < 3; ++k) {
    if (p.bary[k] != 1) continue;
    const int v = P.v[k];
    for (const Corner& c : fans_[static_cast<std::size_t>(v)]) {
      if (c.face != f) continue;
      const Face& F = faces_[static_cast<std::size_t>(f)];
      const double e = ang(F.pos[(c.corner + 1) % 3] - F.pos[c.corner]);
      double rel = wrap_2pi(a - e);
      if (rel > F.angle[c.corner] + 0.5 * (2 * kPi - F.angle[c.corner])) rel = 0;
      rel = std::min(rel, F.angle[c.corner]);
      const Sigma sg{cone_[static_cast<std::size_t>(v)], true, 0};
      return sg.reduce(c.offset + rel);
    }
    throw DomainError("face does not contain the vertex");
  }
  if (f == p.face) return wrap_2pi(a);
  for (int z = 0; z < 3; ++z) {
    const int k = (z + 1) % 3;
    if (p.bary[z] == 0 && P.nbr[k] == f) return wrap_2pi(a - across_angle(p.face, k));
  }
  throw DomainError("face is not incident to the point");
}

std::pair<int, double> PolyhedralSurface::sigma_to_frame(const MeshPoint& p, double angle) const {
  const Face& P = faces_[static_cast<std::size_t>(p.face)];
  for (int k = 0; k < 3; ++k) {
    if (p.bary[k] != 1) continue;
    const int v = P.v[k];
    const auto& fan = fans_[static_cast<std::size_t>(v)];
    const double a = Sigma{cone_[static_cast<std::size_t>(v)], true, 0}.reduce(angle);
    std::size_t i = 0;
    while (i + 1 < fan.size() && a >= fan[i + 1].offset) ++i;
    const Corner& c = fan[i];
    const Face& F = faces_[static_cast<std::size_t>(c.face)];
    const double e = ang(F.pos[(c.corner + 1) % 3] - F.pos[c.corner]);
    return {c.face, e + std::min(a - c.offset, F.angle[c.corner])};
  }
  return {p.face, angle};
}

ShootResult PolyhedralSurface::shoot(const Point& p0, double angle, double length) const {
  const MeshPoint pc = meshpt(canonical(p0));
  ShootResult res;
  if (length <= 0) {
    res.end = pc;
    const Sigma sg = sigma(pc);
    res.back = sg.reduce(angle + 0.5 * sg.length);
    return res;
  }
  auto [f, a] = sigma_to_frame(pc, angle);
  Vec P{};
  for (const auto& [g, X] : reps(pc)) {
    if (g == f) {
      P = X;
      break;
    }
  }
  Vec d{std::cos(a), std::sin(a)};
  double travelled = 0;
  for (int iter = 0; iter < 1000000; ++iter) {
    const Face& F = faces_[static_cast<std::size_t>(f)];
    double sexit = kInf;
    int eexit = -1;
    for (int e = 0; e < 3; ++e) {
      const Vec E = F.pos[(e + 1) % 3] - F.pos[e];
      const Vec n = (1.0 / len(E)) * Vec{-E.y, E.x};
      const double out = -dot(d, n);
      if (out <= 1e-15) continue;
      const double s = std::max(0.0, dot(P - F.pos[e], n)) / out;
      if (s < sexit) {
        sexit = s;
        eexit = e;
      }
    }
    const double rem = length - travelled;
    if (eexit < 0 || rem <= sexit) {
      const MeshPoint end = from_position(f, P + rem * d);
      res.end = end;
      res.length = length;
      res.back = frame_to_sigma(end, f, ang(-1.0 * d));
      return res;
    }
    const Vec X = P + sexit * d;
    travelled += sexit;
    int vk = -1;
    if (len(X - F.pos[eexit]) <= 1e-12 * scale_) vk = eexit;
    if (len(X - F.pos[(eexit + 1) % 3]) <= 1e-12 * scale_) vk = (eexit + 1) % 3;
    if (vk >= 0) {
      const int v = F.v[vk];
      const MeshPoint vp = meshpt(vertex_point(v));
      const double back = frame_to_sigma(vp, f, ang(-1.0 * d));
      if (cone_[static_cast<std::size_t>(v)] < 2 * kPi - 1e-9 || travelled >= length - 1e-15) {
        res.end = vp;
        res.length = travelled;
        res.back = back;
        if (cone_[static_cast<std::size_t>(v)] < 2 * kPi - 1e-9) res.stop = StopKind::vertex;
        return res;
      }
      auto [g, b] = sigma_to_frame(vp, back + kPi);
      for (const Corner& c : fans_[static_cast<std::size_t>(v)]) {
        if (c.face == g) P = faces_[static_cast<std::size_t>(g)].pos[c.corner];
      }
      f = g;
      d = {std::cos(b), std::sin(b)};
      continue;
    }
    Vec Y = X;
    across(f, eexit, Y);
    d = rot(d, across_angle(f, eexit));
    f = F.nbr[eexit];
    P = Y;
  }
  throw Error("geodesic tracing did not terminate");
}

void PolyhedralSurface::build_graph() {
  const int V = static_cast<int>(fans_.size());
  const int k = std::max(0, opts_.subdivisions);
  face_nodes_.assign(faces_.size(), {});
  int next = V;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int c = 0; c < 3; ++c) face_nodes_[f].push_back({faces_[f].v[c], faces_[f].pos[c]});
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& F = faces_[f];
    for (int e = 0; e < 3; ++e) {
      const int g = F.nbr[e];
      if (g < static_cast<int>(f)) continue;
      const Face& G = faces_[static_cast<std::size_t>(g)];
      const int j = F.nbr_edge[e];
      for (int i = 1; i <= k; ++i) {
        const double t = static_cast<double>(i) / (k + 1);
        face_nodes_[f].push_back({next, F.pos[e] + t * (F.pos[(e + 1) % 3] - F.pos[e])});
        face_nodes_[static_cast<std::size_t>(g)].push_back(
            {next, G.pos[(j + 1) % 3] + t * (G.pos[j] - G.pos[(j + 1) % 3])});
        ++next;
      }
    }
  }
  gn_ = static_cast<std::size_t>(next);
  double max_edge = scale_;
  if (gn_ > 2500) {
    gdist_.clear();
    diameter_ = kInf;
    return;
  }
  gdist_.assign(gn_ * gn_, kInf);
  for (std::size_t i = 0; i < gn_; ++i) gdist_[i * gn_ + i] = 0;
  for (const auto& nodes : face_nodes_) {
    for (const auto& [a, pa] : nodes) {
      for (const auto& [b, pb] : nodes) {
        double& d = gdist_[static_cast<std::size_t>(a) * gn_ + static_cast<std::size_t>(b)];
        d = std::min(d, len(pa - pb));
      }
    }
  }
  for (std::size_t m = 0; m < gn_; ++m)
    for (std::size_t i = 0; i < gn_; ++i) {
      const double dim = gdist_[i * gn_ + m];
      if (dim == kInf) continue;
      for (std::size_t j = 0; j < gn_; ++j) {
        const double c = dim + gdist_[m * gn_ + j];
        if (c < gdist_[i * gn_ + j]) gdist_[i * gn_ + j] = c;
      }
    }
  double mx = 0;
  for (double d : gdist_) {
    if (d == kInf) throw ParseError("mesh is not connected", "triangles");
    mx = std::max(mx, d);
  }
  diameter_ = mx + 2 * max_edge;
}

double PolyhedralSurface::graph_bound(const Point& p0, const Point& q0) const {
  const MeshPoint p = meshpt(canonical(p0)), q = meshpt(canonical(q0));
  const auto rp = reps(p), rq = reps(q);
  double best = kInf;
  for (const auto& [f, P] : rp)
    for (const auto& [g, Q] : rq)
      if (f == g) best = std::min(best, len(P - Q));
  if (gdist_.empty()) return best;
  std::map<int, double> dp, dq;
  for (const auto& [f, P] : rp)
    for (const auto& [i, X] : face_nodes_[static_cast<std::size_t>(f)]) {
      auto it = dp.try_emplace(i, kInf).first;
      it->second = std::min(it->second, len(P - X));
    }
  for (const auto& [g, Q] : rq)
    for (const auto& [j, X] : face_nodes_[static_cast<std::size_t>(g)]) {
      auto it = dq.try_emplace(j, kInf).first;
      it->second = std::min(it->second, len(Q - X));
    }
  for (const auto& [i, a] : dp)
    for (const auto& [j, b] : dq)
      best = std::min(best, a + gdist_[static_cast<std::size_t>(i) * gn_ + static_cast<std::size_t>(j)] + b);
  return best;
}

DistanceResult PolyhedralSurface::certified_distance(const Point& p0, const Point& q0) const {
  const MeshPoint p = meshpt(canonical(p0)), q = meshpt(canonical(q0));
  const double ub = graph_bound(p, q);
  if (ub == 0) return {0, 0, 0};
  MeshField F(*this, p, ub + 1e-9 * std::max(1.0, ub));
  const auto r = F.query(q);
  if (!std::isfinite(r.best) || r.best > ub) return {ub, r.error, ub};
  return {r.best, r.error, ub};
}

double PolyhedralSurface::distance(const Point& p, const Point& q) const {
  return certified_distance(p, q).value;
}

DirectionSet PolyhedralSurface::directions_to(const Point& p0, const Point& q0) const {
  const MeshPoint p = meshpt(canonical(p0)), q = meshpt(canonical(q0));
  const double ub = graph_bound(p, q);
  if (ub == 0) return {};
  MeshField F(*this, p, ub + 1e-9 * std::max(1.0, ub));
  return F.at_source(F.query(q));
}

std::shared_ptr<const MeshField> PolyhedralSurface::field(const MeshPoint& src, double radius) const {
  const MeshPoint s = meshpt(canonical(src));
  const std::string key = point_to_string(s) + "@" + num(radius);
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    for (auto it = cache_.begin(); it != cache_.end(); ++it) {
      if (it->first == key) {
        cache_.splice(cache_.begin(), cache_, it);
        return cache_.front().second;
      }
    }
  }
  auto f = std::make_shared<const MeshField>(*this, s, radius);
  std::lock_guard<std::mutex> lock(cache_mu_);
  cache_.emplace_front(key, f);
  while (cache_.size() > std::max<std::size_t>(1, opts_.cache_size)) cache_.pop_back();
  return f;
}

std::shared_ptr<const DistanceOracle> PolyhedralSurface::oracle(const Point& source) const {
  const MeshPoint s = meshpt(canonical(source));
  auto self = std::static_pointer_cast<const PolyhedralSurface>(shared_from_this());
  return std::make_shared<MeshOracle>(self, field(s, diameter_ + 1e-9));
}

Point PolyhedralSurface::random_point(std::mt19937_64& rng) const {
  double total = 0;
  for (const Face& F : faces_) total += F.area;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double t = U(rng) * total;
  std::size_t f = 0;
  while (f + 1 < faces_.size() && t > faces_[f].area) {
    t -= faces_[f].area;
    ++f;
  }
  const double r1 = std::sqrt(U(rng)), r2 = U(rng);
  MeshPoint m{static_cast<int>(f), {1 - r1, r1 * (1 - r2), r1 * r2}};
  return canonical(m);
}

std::vector<SingularPoint> PolyhedralSurface::singular_points() const {
  std::vector<SingularPoint> out;
  for (std::size_t v = 0; v < fans_.size(); ++v) {
    if (cone_[v] < 2 * kPi - 1e-9) {
      out.push_back({vertex_point(static_cast<int>(v)), cone_[v], false, "vertex " + std::to_string(v)});
    }
  }
  return out;
}

std::array<double, 3> PolyhedralSurface::position3d(const Point& p0) const {
  const MeshPoint m = meshpt(canonical(p0));
  if (coords_.empty()) throw DomainError("mesh has no coordinates");
  const Face& F = faces_[static_cast<std::size_t>(m.face)];
  std::array<double, 3> x{0, 0, 0};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) x[i] += m.bary[k] * coords_[static_cast<std::size_t>(F.v[k])][i];
  return x;
}

std::array<double, 2> PolyhedralSurface::chart(const Point& p0) const {
  if (!coords_.empty()) {
    const auto x = position3d(p0);
    return {x[0], x[1]};
  }
  const MeshPoint m = meshpt(canonical(p0));
  const Vec P = position(m);
  return {P.x + 2 * scale_ * m.face, P.y};
}

SpacePtr make_mesh(const MeshInput& in, MeshOptions opts) {
  return std::make_shared<PolyhedralSurface>(in, opts);
}

SpacePtr make_regular_tetrahedron(double edge) {
  MeshInput in;
  const double s = edge / std::sqrt(8.0);
  in.coords = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  in.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return make_mesh(in);
}

}  // namespace alexgeo
