#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace alexgeo {

inline constexpr double kPi = 3.14159265358979323846;

enum class ModelScalar { rho, sigma, theta };

// rho_k(x): (1/k)(1-cos(x sqrt k)), x^2/2, (1/|k|)(cosh(x sqrt -k)-1).
double rho(double kappa, double x);
// sigma_k(x) = sn_k(x).
double sigma(double kappa, double x);
// theta_l(t) = t for l = 0, (e^{lt}-1)/l otherwise.
double theta(double lambda, double t);
double model_scalar(ModelScalar kind, double kappa_or_lambda, double x);

// Angle opposite b in the model triangle with sides a, b, c.
// Returns 0 when a+b<c or b+c<a, pi when a or c vanish and b>0.
double comparison_angle(double kappa, double a, double b, double c);

// Side opposite the angle beta enclosed by sides a and c.
double model_side(double kappa, double a, double c, double beta);

// Largest admissible distance in the model plane (pi/sqrt k, or +inf).
double model_diameter(double kappa);

struct DevelopmentSample {
  double t = 0;
  double r = 0;
  double phi = 0;
};

struct DevelopmentRecord {
  double kappa = 0;
  double tolerance = 1e-9;
  std::vector<DevelopmentSample> samples;
  // turns[i] belongs to samples[i]; NaN at endpoints and at split points.
  std::vector<double> turns;
  // Indices where r vanished and the development was restarted.
  std::vector<std::size_t> splits;
  double min_turn = 0;
  bool convex = true;

  std::string to_csv() const;
  std::string to_svg(double width_px = 1000) const;
};

struct DevelopOptions {
  double tolerance = 1e-9;
  // r below this value counts as passing through the base point.
  double zero_radius = 1e-12;
};

// Unit-speed kappa-development of t -> r(t). Consecutive samples are placed
// as chords of length dt so that piecewise-geodesic inputs develop exactly.
DevelopmentRecord develop_curve(double kappa,
                                const std::vector<std::pair<double, double>>& t_r,
                                const DevelopOptions& opts = {});

// Max |speed - 1| of the developed polyline, measured in the model plane.
double development_speed_defect(const DevelopmentRecord& rec);

// Discrete barrier test for u'' <= a - kappa*u on t0 < t1 < t2: compares u1
// with the model solution through (t0,u0), (t2,u2). Normalized so that for
// kappa = 0 and equal spacing it equals (u0-2u1+u2)/dt^2 - a. Positive values
// are violations.
double barrier_defect(double kappa, double a, double t0, double t1, double t2,
                      double u0, double u1, double u2);

}  // namespace alexgeo
