#include "alexgeo/space.hpp"

#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::cone: return "cone";
    case SpaceKind::spindle: return "spindle";
    case SpaceKind::polygon: return "polygon";
    case SpaceKind::cap: return "cap";
    case SpaceKind::mesh: return "mesh";
  }
  return "?";
}

DistanceResult Space::certified_distance(const Point& p, const Point& q) const {
  const double d = distance(p, q);
  return {d, 0.0, d};
}

ShootResult Space::advance(const Point& p, double angle, double length) const {
  return shoot(p, angle, length);
}

namespace {

class GenericOracle final : public DistanceOracle {
 public:
  GenericOracle(std::shared_ptr<const Space> s, Point src)
      : s_(std::move(s)), src_(s_->canonical(src)) {}
  DistanceResult certified(const Point& x) const override {
    return s_->certified_distance(src_, x);
  }
  DirectionSet directions_toward_source(const Point& x) const override {
    return s_->directions_to(x, src_);
  }
  const Point& source() const override { return src_; }

 private:
  std::shared_ptr<const Space> s_;
  Point src_;
};

}  // namespace

std::shared_ptr<const DistanceOracle> Space::oracle(const Point& source) const {
  return std::make_shared<GenericOracle>(shared_from_this(), source);
}

TangentVec log_map(const Space& S, const Point& p, const Point& q) {
  TangentVec v;
  v.sigma = S.sigma(p);
  v.norm = S.distance(p, q);
  if (v.norm == 0) return v;
  const DirectionSet dirs = S.directions_to(p, q);
  if (!dirs.angles.empty()) {
    v.angle = dirs.angles.front();
  } else if (dirs.whole) {
    v.angle = v.sigma.closed ? 0.0 : v.sigma.start;
  } else {
    v.norm = 0;
  }
  return v;
}

double cone_angle(const Space& S, const Point& vertex) {
  const Sigma s = S.sigma(vertex);
  return s.length;
}

Sigma space_of_directions(const Space& S, const Point& p) { return S.sigma(p); }

bool same_point(const Space& S, const Point& p, const Point& q, double tol) {
  return S.distance(p, q) <= tol;
}

std::string point_to_string(const Point& p) {
  if (auto* a = std::get_if<PolarPoint>(&p)) {
    return "[" + num(a->r) + "," + num(a->phi) + "]";
  }
  if (auto* b = std::get_if<PlanarPoint>(&p)) {
    return "[" + num(b->x) + "," + num(b->y) + "]";
  }
  const auto& m = std::get<MeshPoint>(p);
  return "{\"face\":" + std::to_string(m.face) + ",\"bary\":[" + num(m.bary[0]) +
         "," + num(m.bary[1]) + "," + num(m.bary[2]) + "]}";
}

}  // namespace alexgeo
