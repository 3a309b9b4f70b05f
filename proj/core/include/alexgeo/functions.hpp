#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "alexgeo/expr.hpp"
#include "alexgeo/tangent.hpp"

namespace alexgeo {

using ScalarField = std::function<double(const Point&)>;

ScalarField as_field(const ExprPtr& f, const Space& S);

struct Region {
  Point center;
  double radius = std::numeric_limits<double>::infinity();
};

// Uniform-ish sample of the region (random direction and radius from the
// center, or a uniform point of the space when the ball covers it).
Point sample_region(const Space& S, const Region& region, std::mt19937_64& rng);

struct Chord {
  Point from;
  double angle = 0;
  double length = 0;
};

struct ConcavityOptions {
  int n_geodesics = 100;
  int n_samples = 41;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

struct ConcavityReport {
  bool pass = true;
  double lambda = 0;
  double kappa = 0;
  // Largest defect f'' - (lambda - kappa f) from centered second differences.
  double worst = -std::numeric_limits<double>::infinity();
  Chord worst_chord;
  double worst_t = 0;
  int geodesics = 0;
  double stencil = 0;  // largest spacing used
};

// Barrier test f'' <= lambda - kappa*f along chords (kappa = 0 is lambda-concavity).
ConcavityReport check_barrier(const ScalarField& f, const Space& S, double lambda, double kappa,
                              const std::vector<Chord>& chords, const ConcavityOptions& opts = {});

// Random minimizing chords between sampled points of the region.
std::vector<Chord> random_chords(const Space& S, const Region& region, int n, std::uint64_t seed);

ConcavityReport check_concavity(const ExprPtr& f, const Space& S, double lambda,
                                const Region& region, const ConcavityOptions& opts = {});
ConcavityReport check_concavity(const ScalarField& f, const Space& S, double lambda,
                                const Region& region, const ConcavityOptions& opts = {});

// Certificates are checked, never trusted.
std::vector<ConcavityReport> check_certificates(const ExprPtr& f, const Space& S,
                                                const ConcavityOptions& opts = {});

struct InfConvOptions {
  double search_radius = -1;  // <= 0: lipschitz * eps * 2
  double lipschitz = 1;
  int directions = 64;
  int radii = 32;
  double tol = 1e-11;
};

struct InfConvValue {
  double value = 0;
  Point minimizer;
  double rho = 0;  // |y x*|
  bool in_domain = true;
};

// f_eps(y) = min_x { f(x) + |xy|^2 / eps }.
class InfConvolution {
 public:
  InfConvolution(ScalarField f, std::shared_ptr<const Space> S, double eps, InfConvOptions opts = {});
  InfConvValue evaluate(const Point& y) const;
  double operator()(const Point& y) const { return evaluate(y).value; }
  double eps() const { return eps_; }

 private:
  ScalarField f_;
  std::shared_ptr<const Space> S_;
  double eps_;
  InfConvOptions opts_;
};

// Average of dist_x over x in B_eps(p) with the model area density.
class SmoothDistance {
 public:
  SmoothDistance(std::shared_ptr<const Space> S, const Point& p, double eps, std::size_t n_mc,
                 std::uint64_t seed);
  double operator()(const Point& y) const;
  DirectionalFn differential(const Point& y) const;
  const std::vector<Point>& samples() const { return pts_; }

 private:
  std::shared_ptr<const Space> S_;
  std::vector<Point> pts_;
};

// splitmix64 of (seed, index): per-sample seeds independent of partitioning.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace alexgeo
