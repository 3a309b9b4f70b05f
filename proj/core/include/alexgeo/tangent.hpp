#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "alexgeo/expr.hpp"
#include "alexgeo/sigma.hpp"

namespace alexgeo {

// d(v) = cx cos v + cy sin v + c0 in the Sigma coordinate.
struct Harmonic {
  double cx = 0, cy = 0, c0 = 0;
};

// Differential d_p f restricted to unit directions.
struct DirectionalFn {
  Sigma sigma;
  std::function<double(double)> fn;
  std::vector<double> kinks;
  std::optional<Harmonic> harmonic;  // only when sigma.euclidean()

  double operator()(double angle) const { return fn(angle); }
  double at(const TangentVec& v) const { return v.norm == 0 ? 0.0 : v.norm * fn(v.angle); }
};

DirectionalFn differential(const ExprPtr& f, const Space& S, const Point& p);

struct GradientOptions {
  int grid = 720;
  double zero = 1e-12;     // max d_p f at or below this gives o_p
  double verify_tol = 1e-9;
  bool verify = true;
};

TangentVec gradient(const DirectionalFn& d, const GradientOptions& opts = {});
TangentVec gradient(const ExprPtr& f, const Space& S, const Point& p,
                    const GradientOptions& opts = {});

struct SupportReport {
  bool supporting = false;
  double worst_margin = 0;  // min over grid of -<s,x> - d(x)
  double worst_angle = 0;
};

SupportReport supporting_check(const DirectionalFn& d, const TangentVec& s, int grid = 720,
                               double tol = 1e-9);

// Arc travel of length pi on Sigma (arcs via their doubled circle).
TangentVec polar_vector(const TangentVec& v, double tol = 1e-9);

}  // namespace alexgeo
