#pragma once

#include <array>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "alexgeo/sigma.hpp"

namespace alexgeo {

// Cone/Spindle: (r, phi). SphericalCap: (polar radius from the center, phi).
struct PolarPoint {
  double r = 0;
  double phi = 0;
};

// ConvexPolygon chart coordinates.
struct PlanarPoint {
  double x = 0;
  double y = 0;
};

// PolyhedralSurface: face index and barycentric triple.
struct MeshPoint {
  int face = 0;
  std::array<double, 3> bary{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

using Point = std::variant<PolarPoint, PlanarPoint, MeshPoint>;

enum class SpaceKind { cone, spindle, polygon, cap, mesh };

std::string to_string(SpaceKind k);

enum class StopKind { none, vertex, boundary };

struct ShootResult {
  Point end;
  double length = 0;  // arclength actually travelled
  StopKind stop = StopKind::none;
  double back = 0;  // direction at end pointing back along the path
};

struct DirectionSet {
  std::vector<double> angles;
  bool whole = false;  // every direction of Sigma_p is minimizing

  bool empty() const { return angles.empty() && !whole; }
};

struct DistanceResult {
  double value = 0;
  double error = 0;  // certified: true distance lies in [value - error, value]
  double upper = 0;  // independent upper bound (graph certificate on meshes)
};

struct SingularPoint {
  Point where;
  double angle = 0;  // cone angle, or interior angle at a corner
  bool boundary = false;
  std::string label;
};

// Repeated distance queries from a fixed source.
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual DistanceResult certified(const Point& x) const = 0;
  double distance(const Point& x) const { return certified(x).value; }
  // Minimizing directions at x toward the source.
  virtual DirectionSet directions_toward_source(const Point& x) const = 0;
  virtual const Point& source() const = 0;
};

class Space : public std::enable_shared_from_this<Space> {
 public:
  virtual ~Space() = default;

  virtual SpaceKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual double kappa() const = 0;
  virtual bool has_boundary() const = 0;

  // Validates and normalizes a point; throws DomainError when outside.
  virtual Point canonical(const Point& p) const = 0;

  virtual double distance(const Point& p, const Point& q) const = 0;
  virtual DistanceResult certified_distance(const Point& p, const Point& q) const;
  // All minimizing directions at p toward q (empty when p == q).
  virtual DirectionSet directions_to(const Point& p, const Point& q) const = 0;
  virtual Sigma sigma(const Point& p) const = 0;

  // Geodesic from p in the given direction; stops early at cone points with
  // angle < 2pi and at the boundary.
  virtual ShootResult shoot(const Point& p, double angle, double length) const = 0;
  // Flow step: like shoot, but a step leaving the space is projected back.
  virtual ShootResult advance(const Point& p, double angle, double length) const;

  virtual std::shared_ptr<const DistanceOracle> oracle(const Point& source) const;

  virtual Point random_point(std::mt19937_64& rng) const = 0;
  virtual std::vector<SingularPoint> singular_points() const = 0;
  // Upper bound for distances between sample points (inf for cones).
  virtual double diameter_bound() const = 0;
  virtual std::array<double, 2> chart(const Point& p) const = 0;

  virtual double boundary_distance(const Point&) const {
    return std::numeric_limits<double>::infinity();
  }
  virtual bool on_boundary(const Point&, double = 1e-12) const { return false; }
  // Nearest point of the space (identity when inside).
  virtual Point project(const Point& p) const { return canonical(p); }
};

using SpacePtr = std::shared_ptr<const Space>;

// Convenience wrappers matching the module operations.
TangentVec log_map(const Space& S, const Point& p, const Point& q);
double cone_angle(const Space& S, const Point& vertex);
Sigma space_of_directions(const Space& S, const Point& p);
bool same_point(const Space& S, const Point& p, const Point& q, double tol = 1e-12);

std::string point_to_string(const Point& p);

}  // namespace alexgeo
