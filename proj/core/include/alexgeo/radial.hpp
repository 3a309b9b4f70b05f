#pragma once

#include "alexgeo/flow.hpp"

namespace alexgeo {

struct RadialOptions {
  double h = 1e-3;
  std::vector<double> sample_times;
  GradientOptions gradient;
  double regime_tol = 1e-10;
};

// Radial curve alpha with alpha^+(0) = xi and alpha^+ = m_kappa(|p alpha|, t) grad dist_p.
CurveRecord radial_curve(const SpacePtr& S, const Point& p, double xi, int kappa, double T,
                         const RadialOptions& opts = {});

Point gexp_map(const SpacePtr& S, const Point& p, const TangentVec& v, int kappa,
               const RadialOptions& opts = {});

// Distance between u and v in T_p for the kappa-cone metric: Euclidean cone,
// elliptic cone (kappa = -1) or spherical suspension (kappa = 1).
double tangent_cone_metric(int kappa, const TangentVec& u, const TangentVec& v);

double radial_speed_factor(int kappa, double r, double t);

struct RadialComparisonReport {
  std::vector<double> t;
  std::vector<double> angle;   // comparison angle at p in (t, |alpha(t) q|, |pq|)
  double max_increase = 0;     // positive means monotonicity violated
  double initial_angle = 0;    // angle between xi and the directions to q
  double max_excess = -std::numeric_limits<double>::infinity();  // angle(t) - initial_angle
  bool pass(double tol) const { return max_increase <= tol && max_excess <= tol; }
};

RadialComparisonReport verify_radial_comparison(const SpacePtr& S, const Point& p, double xi,
                                                const Point& q, int kappa,
                                                const std::vector<double>& t_grid,
                                                const RadialOptions& opts = {});

struct ThetaReport {
  std::vector<double> t;
  std::vector<double> value;
  double theta0 = 0;       // d_p f(xi)
  double max_increase = 0;
};

// theta(t) = (f(gexp_p(t xi)) - f(p) - lambda t^2 / 2) / t for lambda-concave f, lambda >= 0.
ThetaReport verify_theta_monotone(const ExprPtr& f, const SpacePtr& S, const Point& p, double xi,
                                  double lambda, const std::vector<double>& t_grid,
                                  const RadialOptions& opts = {});

struct InverseCheckReport {
  int probes = 0;
  int reentries = 0;             // probe points found inside the open geodesic
  double min_excess = std::numeric_limits<double>::infinity();  // |p a| + |a q| - |pq|
  double max_decrease = 0;       // comparison angle at q must not decrease
};

InverseCheckReport gexp_inverse_check(const SpacePtr& S, const CurveRecord& geodesic, int probes,
                                      const RadialOptions& opts = {});

}  // namespace alexgeo
