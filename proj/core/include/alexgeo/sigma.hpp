#pragma once

#include <vector>

#include "alexgeo/model_plane.hpp"

namespace alexgeo {

// Space of directions at a point: a circle of the given length, or an arc of
// absolute angular coordinates [start, start + length] (boundary points).
struct Sigma {
  double length = 2 * kPi;
  bool closed = true;
  double start = 0;

  // Canonical coordinate: [0, length) on circles; for arcs the absolute
  // angle whose offset from start lies in [0, length].
  double reduce(double angle) const;
  // Offset of an angle along the arc, in [0, 2pi).
  double offset(double angle) const;
  bool contains(double angle, double tol = 1e-12) const;
  double arcdist(double a, double b) const;
  double diameter() const;
  // Angle reached from a after travelling s (may be negative) along Sigma.
  double advance(double a, double s) const;
  // Evenly spaced coordinates covering Sigma (arc endpoints included).
  std::vector<double> grid(int n) const;
  // Sigma is a subset of a standard 2pi circle in its own coordinate.
  bool euclidean() const;
};

struct TangentVec {
  double norm = 0;
  double angle = 0;
  Sigma sigma;

  bool is_origin() const { return norm == 0; }
};

double wrap_2pi(double a);
double wrap_pi(double a);

// |u||v|cos(arcdist), the scalar product on T_p.
double scalar_product(const TangentVec& u, const TangentVec& v);
// Euclidean-cone distance in T_p.
double tangent_distance(const TangentVec& u, const TangentVec& v);

}  // namespace alexgeo
