#pragma once

#include <string>
#include <vector>

#include "alexgeo/space.hpp"

namespace alexgeo {

enum class Provenance { gradient_curve, radial, geodesic, traced_qg, convex_curve, prequasigeodesic, user };

std::string to_string(Provenance p);

enum class EventKind { vertex, boundary, stop, truncation, joint, regime_switch };

std::string to_string(EventKind k);

struct CurveEvent {
  double t = 0;
  EventKind kind = EventKind::vertex;
  std::string note;
};

struct CurveSample {
  double t = 0;
  Point p;
  // Right derivative; its norm is the speed in the curve parameter.
  TangentVec right;
  // Right derivative of the reversed curve (points backward).
  TangentVec left;
  bool has_right = false;
  bool has_left = false;
};

// Piecewise curve whose pieces between consecutive samples are geodesics
// leaving sample i in the direction of samples[i].right with constant speed.
struct CurveRecord {
  std::shared_ptr<const Space> space;
  Provenance provenance = Provenance::user;
  double h = 0;
  std::vector<CurveSample> samples;
  std::vector<CurveEvent> events;

  double t_begin() const { return samples.empty() ? 0 : samples.front().t; }
  double t_end() const { return samples.empty() ? 0 : samples.back().t; }
  Point point_at(double t) const;
  // Sum of piece lengths.
  double length() const;
  std::size_t count(EventKind k) const;
  std::string to_csv() const;
  std::string to_svg(double width_px = 1000) const;
};

// Unit-speed minimizing geodesic from p to q, sampled into n pieces.
CurveRecord geodesic(const std::shared_ptr<const Space>& S, const Point& p, const Point& q, int n = 64);
// Unit-speed geodesic ray from p in the given direction.
CurveRecord geodesic_ray(const std::shared_ptr<const Space>& S, const Point& p, double angle,
                         double length, int n = 64);

// Unit-speed concatenation of minimizing geodesics through the given points,
// sampled every `step` and at each joint.
CurveRecord path_curve(const std::shared_ptr<const Space>& S, const std::vector<Point>& points,
                       double step = 0.01);

}  // namespace alexgeo
