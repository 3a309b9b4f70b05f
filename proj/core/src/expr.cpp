#include "alexgeo/expr.hpp"

#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/spaces.hpp"
#include "detail.hpp"

namespace alexgeo {

namespace detail {

DistanceResult leaf_distance(const Space& S, const Point& q, const Point& p) {
  if (S.kind() == SpaceKind::mesh) return S.oracle(q)->certified(p);
  return S.certified_distance(q, p);
}

DirectionSet leaf_directions(const Space& S, const Point& q, const Point& p) {
  if (S.kind() == SpaceKind::mesh) return S.oracle(q)->directions_toward_source(p);
  return S.directions_to(p, q);
}

}  // namespace detail

namespace {

std::shared_ptr<Expr> node(NodeKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

void check_theta_body(const ExprPtr& f) {
  switch (f->kind) {
    case NodeKind::dist_sq: return;
    case NodeKind::affine:
      for (double w : f->weights) {
        if (w < 0) throw DomainError("theta body needs non-negative weights");
      }
      for (const auto& c : f->children) check_theta_body(c);
      return;
    case NodeKind::min:
      for (const auto& c : f->children) check_theta_body(c);
      return;
    default:
      throw DomainError("theta body may only combine dist_sq leaves with affine/min nodes");
  }
}

}  // namespace

ExprPtr dist(const Point& q) {
  auto e = node(NodeKind::dist);
  e->q = q;
  return e;
}

ExprPtr dist_sq(const Point& q) {
  auto e = node(NodeKind::dist_sq);
  e->q = q;
  return e;
}

ExprPtr rho_dist(double kappa, const Point& q) {
  auto e = node(NodeKind::rho_dist);
  e->q = q;
  e->kappa = kappa;
  return e;
}

ExprPtr phi_rc(double r, double c, ExprPtr inner) {
  if (!(r > 0)) throw DomainError("phi_rc needs r > 0");
  auto e = node(NodeKind::phi_rc);
  e->r = r;
  e->c = c;
  e->children = {std::move(inner)};
  return e;
}

ExprPtr affine(std::vector<double> weights, std::vector<ExprPtr> children, double constant) {
  if (weights.size() != children.size()) throw DomainError("affine: weights and terms differ in size");
  auto e = node(NodeKind::affine);
  e->weights = std::move(weights);
  e->children = std::move(children);
  e->constant = constant;
  return e;
}

ExprPtr sum(std::vector<ExprPtr> children) {
  std::vector<double> w(children.size(), 1.0);
  return affine(std::move(w), std::move(children));
}

ExprPtr scaled(double w, ExprPtr child, double constant) {
  return affine({w}, {std::move(child)}, constant);
}

ExprPtr min_of(std::vector<ExprPtr> children) {
  if (children.empty()) throw DomainError("min of nothing");
  auto e = node(NodeKind::min);
  e->children = std::move(children);
  return e;
}

ExprPtr theta(ExprPtr body) {
  check_theta_body(body);
  auto e = node(NodeKind::theta);
  e->children = {std::move(body)};
  return e;
}

ExprPtr chart_affine(double a, double b, double c) {
  auto e = node(NodeKind::chart_affine);
  e->a = a;
  e->b = b;
  e->constant = c;
  return e;
}

ExprPtr with_certificate(ExprPtr f, Certificate cert) {
  auto e = std::make_shared<Expr>(*f);
  e->certificates.push_back(std::move(cert));
  return e;
}

ExprPtr dist_boundary(const Space& S) {
  if (const auto* P = dynamic_cast<const ConvexPolygon*>(&S)) {
    std::vector<ExprPtr> parts;
    for (std::size_t i = 0; i < P->vertices().size(); ++i) {
      const auto n = P->inward_normal(i);
      const auto& v = P->vertices()[i];
      parts.push_back(chart_affine(n[0], n[1], -(n[0] * v[0] + n[1] * v[1])));
    }
    return min_of(std::move(parts));
  }
  if (const auto* C = dynamic_cast<const SphericalCap*>(&S)) {
    return scaled(-1.0, dist(PolarPoint{0, 0}), C->r0());
  }
  throw DomainError("space has no boundary");
}

double phi_rc_value(double r, double c, double x) {
  const double u = x - r;
  return u - c * u * u / r;
}

double phi_rc_derivative(double r, double c, double x) { return 1 - 2 * c * (x - r) / r; }

EvalResult eval_certified(const ExprPtr& f, const Space& S, const Point& p) {
  switch (f->kind) {
    case NodeKind::dist: {
      const auto d = detail::leaf_distance(S, f->q, p);
      return {d.value, d.error};
    }
    case NodeKind::dist_sq: {
      const auto d = detail::leaf_distance(S, f->q, p);
      return {d.value * d.value, 2 * d.value * d.error};
    }
    case NodeKind::rho_dist: {
      const auto d = detail::leaf_distance(S, f->q, p);
      return {rho(f->kappa, d.value), std::abs(sigma(f->kappa, d.value)) * d.error};
    }
    case NodeKind::phi_rc: {
      const auto x = eval_certified(f->children[0], S, p);
      return {phi_rc_value(f->r, f->c, x.value),
              std::abs(phi_rc_derivative(f->r, f->c, x.value)) * x.error +
                  std::abs(f->c) * x.error * x.error / f->r};
    }
    case NodeKind::affine: {
      EvalResult out{f->constant, 0};
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        const auto x = eval_certified(f->children[i], S, p);
        out.value += f->weights[i] * x.value;
        out.error += std::abs(f->weights[i]) * x.error;
      }
      return out;
    }
    case NodeKind::min: {
      EvalResult out{std::numeric_limits<double>::infinity(), 0};
      for (const auto& c : f->children) {
        const auto x = eval_certified(c, S, p);
        if (x.value < out.value) out.value = x.value;
        out.error = std::max(out.error, x.error);
      }
      return out;
    }
    case NodeKind::theta: return eval_certified(f->children[0], S, p);
    case NodeKind::chart_affine: {
      const auto* x = std::get_if<PlanarPoint>(&p);
      if (!x) throw DomainError("chart_affine needs planar coordinates");
      return {f->a * x->x + f->b * x->y + f->constant, 0};
    }
  }
  return {};
}

double eval(const ExprPtr& f, const Space& S, const Point& p) {
  return eval_certified(f, S, p).value;
}

std::vector<Point> leaf_points(const ExprPtr& f) {
  std::vector<Point> out;
  if (f->kind == NodeKind::dist || f->kind == NodeKind::dist_sq || f->kind == NodeKind::rho_dist) {
    out.push_back(f->q);
  }
  for (const auto& c : f->children) {
    auto sub = leaf_points(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void validate(const ExprPtr& f, const Space& S) {
  for (const auto& q : leaf_points(f)) S.canonical(q);
  if (f->kind == NodeKind::chart_affine && S.kind() != SpaceKind::polygon) {
    throw DomainError("chart_affine is defined on polygons only");
  }
  if (f->kind == NodeKind::theta) check_theta_body(f->children[0]);
  for (const auto& c : f->children) validate(c, S);
}

}  // namespace alexgeo
