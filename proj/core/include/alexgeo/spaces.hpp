#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <list>
#include <tuple>

#include "alexgeo/space.hpp"

namespace alexgeo {

// Euclidean cone over a circle of length theta. theta = 2pi is the plane.
class Cone final : public Space {
 public:
  explicit Cone(double theta, double sample_radius = 2.0);

  SpaceKind kind() const override { return SpaceKind::cone; }
  std::string name() const override;
  double kappa() const override { return 0; }
  bool has_boundary() const override { return false; }
  Point canonical(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  DirectionSet directions_to(const Point& p, const Point& q) const override;
  Sigma sigma(const Point& p) const override;
  ShootResult shoot(const Point& p, double angle, double length) const override;
  Point random_point(std::mt19937_64& rng) const override;
  std::vector<SingularPoint> singular_points() const override;
  double diameter_bound() const override;
  std::array<double, 2> chart(const Point& p) const override;

  double theta() const { return theta_; }
  double sample_radius() const { return sample_radius_; }
  bool is_plane() const;

 private:
  double theta_;
  double sample_radius_;
};

// Spherical suspension over a circle of length theta (two apices, kappa = 1).
class Spindle final : public Space {
 public:
  explicit Spindle(double theta);

  SpaceKind kind() const override { return SpaceKind::spindle; }
  std::string name() const override;
  double kappa() const override { return 1; }
  bool has_boundary() const override { return false; }
  Point canonical(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  DirectionSet directions_to(const Point& p, const Point& q) const override;
  Sigma sigma(const Point& p) const override;
  ShootResult shoot(const Point& p, double angle, double length) const override;
  Point random_point(std::mt19937_64& rng) const override;
  std::vector<SingularPoint> singular_points() const override;
  double diameter_bound() const override { return kPi; }
  std::array<double, 2> chart(const Point& p) const override;

  double theta() const { return theta_; }
  bool is_sphere() const;

 private:
  double theta_;
};

// Strictly convex planar polygon, vertices counter-clockwise.
class ConvexPolygon final : public Space {
 public:
  explicit ConvexPolygon(std::vector<std::array<double, 2>> vertices);

  SpaceKind kind() const override { return SpaceKind::polygon; }
  std::string name() const override;
  double kappa() const override { return 0; }
  bool has_boundary() const override { return true; }
  Point canonical(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  DirectionSet directions_to(const Point& p, const Point& q) const override;
  Sigma sigma(const Point& p) const override;
  ShootResult shoot(const Point& p, double angle, double length) const override;
  ShootResult advance(const Point& p, double angle, double length) const override;
  Point random_point(std::mt19937_64& rng) const override;
  std::vector<SingularPoint> singular_points() const override;
  double diameter_bound() const override;
  std::array<double, 2> chart(const Point& p) const override;
  double boundary_distance(const Point& p) const override;
  bool on_boundary(const Point& p, double tol = 1e-12) const override;
  Point project(const Point& p) const override;

  const std::vector<std::array<double, 2>>& vertices() const { return v_; }
  double interior_angle(std::size_t i) const;
  // Signed distance to the line of edge i (positive inside).
  double edge_distance(std::size_t i, double x, double y) const;
  std::array<double, 2> inward_normal(std::size_t i) const { return n_[i]; }
  std::array<double, 2> centroid() const;

 private:
  std::array<double, 2> nearest(double x, double y) const;
  std::vector<std::array<double, 2>> v_;
  std::vector<std::array<double, 2>> n_;
  double scale_;
};

// Ball of radius r0 <= pi/2 around the north pole of the unit sphere.
class SphericalCap final : public Space {
 public:
  explicit SphericalCap(double r0);

  SpaceKind kind() const override { return SpaceKind::cap; }
  std::string name() const override;
  double kappa() const override { return 1; }
  bool has_boundary() const override { return true; }
  Point canonical(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  DirectionSet directions_to(const Point& p, const Point& q) const override;
  Sigma sigma(const Point& p) const override;
  ShootResult shoot(const Point& p, double angle, double length) const override;
  ShootResult advance(const Point& p, double angle, double length) const override;
  Point random_point(std::mt19937_64& rng) const override;
  std::vector<SingularPoint> singular_points() const override { return {}; }
  double diameter_bound() const override { return 2 * r0_; }
  std::array<double, 2> chart(const Point& p) const override;
  double boundary_distance(const Point& p) const override;
  bool on_boundary(const Point& p, double tol = 1e-12) const override;
  Point project(const Point& p) const override;

  double r0() const { return r0_; }

 private:
  double r0_;
};

struct MeshInput {
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<double, 3>> coords;  // optional
  // Undirected edge lengths (i, j, length); used when coords is empty.
  std::vector<std::tuple<int, int, double>> edge_lengths;
};

struct MeshOptions {
  int max_depth = 12;
  int subdivisions = 3;  // extra nodes per edge in the certificate graph
  std::size_t cache_size = 64;
};

class MeshField;

// Closed triangulated surface with intrinsic flat metric on faces.
class PolyhedralSurface final : public Space {
 public:
  struct Vec {
    double x = 0, y = 0;
  };
  struct Face {
    std::array<int, 3> v{};
    std::array<double, 3> len{};  // len[k] = |v_k v_{k+1}|
    std::array<Vec, 3> pos{};     // face frame, pos[0] = 0, pos[1] on +x
    std::array<double, 3> angle{};
    std::array<int, 3> nbr{};       // face across edge k
    std::array<int, 3> nbr_edge{};  // its edge index
    double area = 0;
  };
  struct Corner {
    int face = 0;
    int corner = 0;
    double offset = 0;  // fan coordinate of the corner's first edge
  };

  PolyhedralSurface(const MeshInput& in, MeshOptions opts = {});
  ~PolyhedralSurface() override;

  SpaceKind kind() const override { return SpaceKind::mesh; }
  std::string name() const override;
  double kappa() const override { return 0; }
  bool has_boundary() const override { return false; }
  Point canonical(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  DistanceResult certified_distance(const Point& p, const Point& q) const override;
  DirectionSet directions_to(const Point& p, const Point& q) const override;
  Sigma sigma(const Point& p) const override;
  ShootResult shoot(const Point& p, double angle, double length) const override;
  std::shared_ptr<const DistanceOracle> oracle(const Point& source) const override;
  Point random_point(std::mt19937_64& rng) const override;
  std::vector<SingularPoint> singular_points() const override;
  double diameter_bound() const override { return diameter_; }
  std::array<double, 2> chart(const Point& p) const override;

  std::size_t num_vertices() const { return fans_.size(); }
  std::size_t num_faces() const { return faces_.size(); }
  const Face& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  double vertex_angle(int v) const { return cone_[static_cast<std::size_t>(v)]; }
  const std::vector<Corner>& fan(int v) const { return fans_[static_cast<std::size_t>(v)]; }
  Point vertex_point(int v) const;
  // Vertex index if p sits on a vertex, else -1.
  int vertex_of(const Point& p, double tol = 1e-12) const;
  std::array<double, 3> position3d(const Point& p) const;
  bool has_coords() const { return !coords_.empty(); }
  // Graph upper bound for |pq| (edge subdivision certificate).
  double graph_bound(const Point& p, const Point& q) const;
  const MeshOptions& options() const { return opts_; }

  // Point representations in each incident face: (face, position in frame).
  std::vector<std::pair<int, Vec>> reps(const MeshPoint& p) const;
  // Converts an angle in the frame of face f at point p to p's Sigma coordinate.
  double frame_to_sigma(const MeshPoint& p, int f, double frame_angle) const;
  // Sigma coordinate at p to (face, frame angle) of the sector containing it.
  std::pair<int, double> sigma_to_frame(const MeshPoint& p, double angle) const;
  // Rigid motion taking frame of faces_[f] to frame of its neighbor across k.
  void across(int f, int k, Vec& point) const;
  double across_angle(int f, int k) const;

  std::shared_ptr<const MeshField> field(const MeshPoint& src, double radius) const;

 private:
  friend class MeshField;
  void build_graph();
  Vec position(const MeshPoint& p) const;
  MeshPoint from_position(int f, Vec x) const;

  std::vector<Face> faces_;
  std::vector<std::vector<Corner>> fans_;
  std::vector<double> cone_;
  std::vector<std::array<double, 3>> coords_;
  MeshOptions opts_;
  double diameter_ = 0;
  double scale_ = 1;

  // Certificate graph: vertices plus edge subdivision points.
  std::vector<std::vector<std::pair<int, Vec>>> face_nodes_;
  std::size_t gn_ = 0;
  std::vector<double> gdist_;  // all pairs, row-major
  mutable std::mutex cache_mu_;
  mutable std::list<std::pair<std::string, std::shared_ptr<const MeshField>>> cache_;
};

SpacePtr make_cone(double theta);
SpacePtr make_plane();
SpacePtr make_spindle(double theta);
SpacePtr make_polygon(std::vector<std::array<double, 2>> vertices);
SpacePtr make_cap(double r0);
SpacePtr make_mesh(const MeshInput& in, MeshOptions opts = {});
SpacePtr make_regular_tetrahedron(double edge = 1.0);

// JSON description; see README for the format.
SpacePtr load_space(const std::string& json_text);
// Errors carry "file:line" as their location.
SpacePtr load_space_file(const std::string& path);
std::string read_text_file(const std::string& path);
// Point from JSON text: [r, phi], [x, y], {"face":f,"bary":[...]}.
// JSON pair, compact "a,b" (angle literals allowed) or mesh "F<face>:b0,b1".
Point parse_point(const Space& S, const std::string& json_text);

struct Doubling {
  SpacePtr space;
  SpacePtr base;
  std::function<Point(const Point&)> project;  // double -> base
  std::function<Point(const Point&, bool)> lift;  // base -> double, sheet
};

Doubling build_doubling(const SpacePtr& base);

}  // namespace alexgeo
