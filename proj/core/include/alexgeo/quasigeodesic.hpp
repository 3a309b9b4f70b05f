#pragma once

#include <cstdint>

#include "alexgeo/curve.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/radial.hpp"

namespace alexgeo {

enum class SplitRule { equal_split };

struct TraceOptions {
  SplitRule rule = SplitRule::equal_split;
  double sample_step = 0.01;
};

// Straight inside faces; at a cone point of angle theta < 2pi the curve
// leaves so that both side angles equal theta/2. Stops at the boundary.
CurveRecord trace_quasigeodesic(const SpacePtr& S, const Point& p, double xi, double L,
                                const TraceOptions& opts = {});

struct QGCheckOptions {
  int n_probes = 20;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  int stencil = 1;  // centered stencil half-width in samples
};

struct QGCheckReport {
  int probes = 0;
  double min_turn = std::numeric_limits<double>::infinity();        // development convexity
  double worst_barrier = -std::numeric_limits<double>::infinity();  // h'' - (1 - kappa h)
  double worst_angle_increase = 0;                                  // comparison angle monotonicity
  double worst_initial_excess = -std::numeric_limits<double>::infinity();
  double speed_defect = 0;                                          // max |chord/dt - 1|
  double stencil_width = 0;
  bool convex = false, barrier = false, monotone = false, initial = false, unit_speed = false;
  bool pass() const { return convex && barrier && monotone && initial && unit_speed; }
};

QGCheckReport check_quasigeodesic(const SpacePtr& S, const CurveRecord& curve,
                                  const QGCheckOptions& opts = {});

struct EntropyAtom {
  double t = 0;
  double jump = 0;  // ln|gamma^+| - ln|gamma^-|
};

struct EntropyRecord {
  std::vector<EntropyAtom> atoms;
  double total = 0;
  double resolution = 0;
};

EntropyRecord entropy(const CurveRecord& curve);

struct LadderOptions {
  double h = 1e-3;
  double stall = 1e-9;
  GradientOptions gradient;
};

// Joint of radial curves alpha_{v_n} on [n eps, (n+1) eps], v_{n+1} = alpha_{v_n}^+(eps).
CurveRecord build_convex_curve(const SpacePtr& S, const Point& p, double xi, double eps, double T,
                               const LadderOptions& opts = {}, double speed = 1.0);

struct PreQuasigeodesic {
  CurveRecord curve;
  EntropyRecord entropy;
  std::vector<double> joints;
};

// Intervals of length <= eps with speed in [(1-eps)s_i, s_i]; at each joint
// the curve continues along a polar vector v* of gamma^- with |v*| <= |gamma^-|.
PreQuasigeodesic build_prequasigeodesic(const SpacePtr& S, const Point& p, double xi, double eps,
                                        double T, const LadderOptions& opts = {}, double speed = 1.0);

struct ChopExtendReport {
  double t_max = 0;
  double extension_atom = 0;   // mu({t_max})
  double t_bar = 0;
  double theta = 0;            // angle(gamma^+(t), direction to gamma(t_bar))
  double mu = 0;               // mu((t, t_bar)) = ln|gamma^+(t)| - ln|gamma^-(t_bar)|
  bool chop_found = false;
  int piece_checks = 0;
  double piece_worst_margin = std::numeric_limits<double>::infinity();
};

ChopExtendReport chop_extend_demo(const SpacePtr& S, const Point& p, double xi, double eps,
                                  const LadderOptions& opts = {}, std::uint64_t seed = 1);

}  // namespace alexgeo
