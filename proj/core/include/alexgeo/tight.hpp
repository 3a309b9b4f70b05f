#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "alexgeo/functions.hpp"

namespace alexgeo {

struct StrictConcaveOptions {
  double phase = 0;        // direction of the first center in Sigma_p
  bool normalize = false;  // add min_i(dist_{q_i}) - r so that d_p f ~ -|x|
  int n_chords = 100;
  double check_radius = -1;  // <= 0: r / 4
  std::uint64_t seed = 1;
};

struct StrictlyConcave {
  ExprPtr f;
  std::vector<Point> centers;
  Region region;                 // where the margin was measured
  ConcavityReport check;         // lambda = 0 second differences
  double margin = 0;             // -check.worst; positive means strictly concave
  bool ok = false;
  double angle_gap = 0;          // min over xi of max_i |alpha_i(xi) - pi/2| at p
  double suggested_c = 0;        // only meaningful when !ok
  double value_at_p = 0;
  double differential_defect = 0;  // max |d_p f(xi) + 1| when normalized
};

StrictlyConcave build_strictly_concave(const SpacePtr& S, const Point& p, double r, double c,
                                       int n, const StrictConcaveOptions& opts = {});

struct ConvexityReport {
  int chords = 0;
  double worst_violation = 0;  // max (-delta - f) along chords, positive is a failure
  bool pass(double tol = 1e-12) const { return chords > 0 && worst_violation <= tol; }
};

// Chords between random points of {f >= level} inside the region stay in the set.
ConvexityReport superlevel_convexity(const SpacePtr& S, const ExprPtr& f, double level,
                                     const Region& region, int n_chords = 100,
                                     std::uint64_t seed = 1);

struct ControlledConcavityOptions {
  int perturbations = 100;
  std::vector<double> deltas{1e-2, 1e-3};
  double neighborhood = 1e-2;  // radius around the model base point
  double stencil = 1e-3;
  int chords_per_config = 8;
  double eps = 1e-6;
  std::uint64_t seed = 1;
};

struct ControlledConcavityReport {
  double lambda = 0;
  double kappa = 0;
  std::vector<double> deltas;
  std::vector<double> worst_defect;  // max f'' - lambda per delta
  int configurations = 0;
  int rejected = 0;
  bool labeled = false;
};

// Instantiates the (lambda, kappa) controlled-concavity type at p by testing the
// same expression on perturbed model configurations.
ControlledConcavityReport label_controlled_concavity(const SpacePtr& S, const ExprPtr& f,
                                                     const Point& p, double lambda, double kappa,
                                                     const ControlledConcavityOptions& opts = {});

struct TightOptions {
  int n_samples = 500;
  int directions = 720;
  double regular_tol = 1e-9;
  GradientOptions gradient;
  std::uint64_t seed = 1;
};

struct TightSample {
  Point x;
  double worst = -std::numeric_limits<double>::infinity();  // max_{i != j} d f_i(grad f_j)
  int i = -1, j = -1;
  double regularity = 0;  // max over directions of min_i d f_i
  bool regular = false;
};

struct TightReport {
  double sup = -std::numeric_limits<double>::infinity();
  int worst_i = -1, worst_j = -1;
  Point worst_x;
  int samples = 0;
  int regular = 0;
  int critical = 0;
  std::vector<TightSample> per_sample;
  bool tight() const { return samples > 0 && sup < 0; }
};

TightReport tight_check(const SpacePtr& S, const std::vector<ExprPtr>& funcs, const Region& region,
                        const TightOptions& opts = {});

// max over directions of min_i d_x f_i; positive at regular points.
double regularity(const Space& S, const std::vector<ExprPtr>& funcs, const Point& x,
                  int directions = 720);

struct ImageOptions {
  int grid = 41;  // points per side of the chart grid over the region
  int support_tests = 1000;
  int critical_samples = 200;
  int lipschitz_pairs = 500;
  double lipschitz_scale = 0.1;  // pair separation as a fraction of the region radius
  double critical_tol = 1e-6;    // min-norm certificate for critical points
  double argmax_tol = 1e-10;
  double concavity_tol = 1e-9;
  std::uint64_t seed = 1;
};

struct ImageSample {
  std::array<double, 2> x{};
  std::vector<double> F;
};

struct ImageReport {
  int l = 0;
  std::vector<ImageSample> cloud;
  std::vector<double> concavity_margin;  // per coordinate, -max second difference
  TightReport tight;
  int support_tests = 0;
  int support_failures = 0;
  double worst_support = -std::numeric_limits<double>::infinity();  // max excess over the bound
  double chord_worst = 0;   // max over geodesics of (chord - F) coordinatewise, <= 0 expected
  int critical_samples = 0;
  double worst_g_deviation = 0;  // max |G(F(x)) x| on critical samples
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0;
  std::vector<std::array<double, 2>> projection_ratios;  // per dropped coordinate: min, max
  bool pass(double g_tol = 1e-4) const {
    return support_tests > 0 && support_failures == 0 && critical_samples > 0 &&
           worst_g_deviation < g_tol;
  }
  std::string to_csv() const;
};

// Critical locator: argmax over the region of min_i (f_i - y_i).
Point critical_locator(const SpacePtr& S, const std::vector<ExprPtr>& funcs,
                       const std::vector<double>& y, const Region& region, double tol = 1e-10);

// Region must be a chart disc inside a ConvexPolygon; 1 to 3 coordinates.
ImageReport tight_image_study(const SpacePtr& S, const std::vector<ExprPtr>& funcs,
                              const Region& region, const ImageOptions& opts = {});

}  // namespace alexgeo
