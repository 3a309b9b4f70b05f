#pragma once

#include "alexgeo/space.hpp"

namespace alexgeo::detail {

// |pq| with certified error, reusing cached per-source fields on meshes.
DistanceResult leaf_distance(const Space& S, const Point& q, const Point& p);
// Minimizing directions at p toward q.
DirectionSet leaf_directions(const Space& S, const Point& q, const Point& p);

}  // namespace alexgeo::detail
