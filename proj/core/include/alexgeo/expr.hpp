#pragma once

#include <memory>
#include <string>
#include <vector>

#include "alexgeo/space.hpp"

namespace alexgeo {

enum class NodeKind { dist, dist_sq, rho_dist, phi_rc, affine, min, theta, chart_affine };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Certificate {
  double lambda = 0;
  Point center;
  double radius = 0;
};

class Expr {
 public:
  NodeKind kind = NodeKind::dist;
  Point q;                     // dist, dist_sq, rho_dist
  double kappa = 0;            // rho_dist
  double r = 0, c = 0;         // phi_rc
  std::vector<double> weights;  // affine
  double constant = 0;          // affine, chart_affine
  double a = 0, b = 0;          // chart_affine: a*x + b*y + constant
  std::vector<ExprPtr> children;
  std::vector<Certificate> certificates;
};

ExprPtr dist(const Point& q);
ExprPtr dist_sq(const Point& q);
ExprPtr rho_dist(double kappa, const Point& q);
// phi_{r,c}(x) = (x - r) - c (x - r)^2 / r applied to inner.
ExprPtr phi_rc(double r, double c, ExprPtr inner);
ExprPtr affine(std::vector<double> weights, std::vector<ExprPtr> children, double constant = 0);
ExprPtr sum(std::vector<ExprPtr> children);
ExprPtr scaled(double w, ExprPtr child, double constant = 0);
ExprPtr min_of(std::vector<ExprPtr> children);
// Monotone composition of squared distances; throws DomainError when the
// body is not an affine (non-negative weights) / min tree over dist_sq.
ExprPtr theta(ExprPtr body);
ExprPtr chart_affine(double a, double b, double c);
ExprPtr with_certificate(ExprPtr f, Certificate cert);

// Distance to the boundary (polygon: min of edge distances; cap: r0 - r).
ExprPtr dist_boundary(const Space& S);

struct EvalResult {
  double value = 0;
  double error = 0;
};

double eval(const ExprPtr& f, const Space& S, const Point& p);
EvalResult eval_certified(const ExprPtr& f, const Space& S, const Point& p);

// Scalar phi_{r,c} and its derivative.
double phi_rc_value(double r, double c, double x);
double phi_rc_derivative(double r, double c, double x);

// All leaf points (for validation against a space).
std::vector<Point> leaf_points(const ExprPtr& f);
void validate(const ExprPtr& f, const Space& S);

// JSON form, e.g. {"op":"sum","terms":[{"op":"phi_rc","r":0.3,"c":12,"q":[1,0]}]}.
ExprPtr load_expr(const Space& S, const std::string& json_text);
// Errors carry "file:line" as their location.
ExprPtr load_expr_file(const Space& S, const std::string& path);
std::string to_json(const ExprPtr& f);

}  // namespace alexgeo
