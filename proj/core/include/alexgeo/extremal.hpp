#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "alexgeo/flow.hpp"

namespace alexgeo {

struct SubsetPart {
  enum class Kind { point, boundary, edge_path };
  Kind kind = Kind::point;
  Point point;
  std::vector<Point> path;  // edge_path vertices
};

struct Subset {
  std::string label;
  bool whole = false;
  std::vector<SubsetPart> parts;  // empty and !whole: the empty set
  bool empty() const { return !whole && parts.empty(); }
};

Subset point_subset(const Point& p, std::string label = "point");
Subset boundary_subset(std::string label = "boundary");
Subset edge_path_subset(std::vector<Point> path, std::string label = "edge-path");

double distance_to_subset(const Space& S, const Subset& E, const Point& x);
// Nearest point of E to x (a local minimum of dist_x on E).
Point foot_point(const Space& S, const Subset& E, const Point& x);

struct ExtremalOptions {
  int n_funcs = 20;
  int n_steps = 100;
  double h = 1e-2;
  double tol = 1e-8;
  int directions = 360;
  std::uint64_t seed = 1;
};

struct ExtremalReport {
  bool trivial = false;      // whole space or empty set
  int criterion_checks = 0;
  double worst_gradient = 0;  // max |grad_p dist_q| at foot points p
  bool criterion = false;
  int flows = 0;
  double worst_drift = 0;     // max distance from E along dist^2 flows
  double drift_rate = 0;      // worst_drift / flow duration
  bool invariance = false;
  bool pass() const { return criterion && invariance; }
};

ExtremalReport verify_extremal(const SpacePtr& S, const Subset& E, const ExtremalOptions& opts = {});

struct ExtremalCandidate {
  Subset subset;
  std::string reason;
  ExtremalReport evidence;
};

std::vector<ExtremalCandidate> detect_extremal(const SpacePtr& S, const ExtremalOptions& opts = {});

struct GradientFloorReport {
  double eps0 = 0;
  double floor = std::numeric_limits<double>::infinity();  // min |grad dist_E| on 0 < dist_E < eps0
  int samples = 0;
};

// Distance functions to point and boundary subsets only.
GradientFloorReport extremal_gradient_floor(const SpacePtr& S, const Subset& E, double eps0,
                                            int n = 200, std::uint64_t seed = 1);

}  // namespace alexgeo
