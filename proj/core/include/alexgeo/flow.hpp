#pragma once

#include <functional>

#include "alexgeo/curve.hpp"
#include "alexgeo/tangent.hpp"

namespace alexgeo {

struct FlowOptions {
  double h = 1e-3;
  double tol_stop = 1e-8;
  // Parameter values the integrator must land on exactly.
  std::vector<double> sample_times;
  GradientOptions gradient;
  // Optional per-step cap on h at (t, x).
  std::function<double(double, const Point&)> step_control;
};

// Velocity field (t, x) -> tangent vector at x.
using VelocityField = std::function<TangentVec(double, const Point&)>;

// Broken-geodesic integration of x' = V(t, x) from (t0, p) to T.
CurveRecord integrate(const std::shared_ptr<const Space>& S, const Point& p, double t0, double T,
                      const VelocityField& V, const FlowOptions& opts, Provenance prov);

CurveRecord gradient_curve(const ExprPtr& f, const std::shared_ptr<const Space>& S, const Point& p,
                           double T, const FlowOptions& opts = {});

std::vector<Point> flow_map(const ExprPtr& f, const std::shared_ptr<const Space>& S,
                            const std::vector<Point>& points, double t, const FlowOptions& opts = {});

struct DistanceEstimateReport {
  // Margins are rhs - lhs; negative means violated.
  double worst_i = std::numeric_limits<double>::infinity();
  double worst_ii = std::numeric_limits<double>::infinity();
  double worst_iii = std::numeric_limits<double>::infinity();
  int checks = 0;
  bool pass(double tol) const { return worst_i >= -tol && worst_ii >= -tol && worst_iii >= -tol; }
};

DistanceEstimateReport verify_distance_estimates(const ExprPtr& f, const std::shared_ptr<const Space>& S,
                                                 double lambda,
                                                 const std::vector<std::pair<Point, Point>>& pairs,
                                                 const std::vector<double>& t_grid,
                                                 const FlowOptions& opts = {});

struct LengthElementReport {
  double worst_margin = std::numeric_limits<double>::infinity();  // normalized by ds^2
  int checks = 0;
};

// gamma1(s) = Phi^{tau(s)} gamma0(s); compares d sigma^2 with
// e^{2 lambda tau}[ds^2 + 2 d(f o gamma0) d tau + |grad f|^2 d tau^2].
LengthElementReport length_element_check(const ExprPtr& f, const std::shared_ptr<const Space>& S,
                                         double lambda, const CurveRecord& gamma0,
                                         const std::function<double(double)>& tau,
                                         const FlowOptions& opts = {});

}  // namespace alexgeo
