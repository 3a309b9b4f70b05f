#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/functions.hpp"

namespace alexgeo {

ScalarField as_field(const ExprPtr& f, const Space& S) {
  return [f, &S](const Point& p) { return eval(f, S, p); };
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Point sample_region(const Space& S, const Region& region, std::mt19937_64& rng) {
  if (!(region.radius < S.diameter_bound())) return S.random_point(rng);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Sigma sg = S.sigma(region.center);
  const double a = sg.closed ? sg.length * U(rng) : sg.start + sg.length * U(rng);
  const double r = region.radius * std::sqrt(U(rng));
  return S.shoot(region.center, a, r).end;
}

std::vector<Chord> random_chords(const Space& S, const Region& region, int n, std::uint64_t seed) {
  std::vector<Chord> out;
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (static_cast<int>(out.size()) < n && attempts < 100 * n + 100) {
    ++attempts;
    const Point a = sample_region(S, region, rng);
    const Point b = sample_region(S, region, rng);
    const double d = S.distance(a, b);
    if (d < 1e-6) continue;
    const DirectionSet dirs = S.directions_to(a, b);
    if (dirs.angles.empty()) continue;
    out.push_back({a, dirs.angles.front(), d});
  }
  return out;
}

ConcavityReport check_barrier(const ScalarField& f, const Space& S, double lambda, double kappa,
                              const std::vector<Chord>& chords, const ConcavityOptions& opts) {
  ConcavityReport rep;
  rep.lambda = lambda;
  rep.kappa = kappa;
  const int n = std::max(3, opts.n_samples);
  for (const Chord& c : chords) {
    std::vector<double> t, v;
    for (int i = 0; i < n; ++i) {
      const double ti = c.length * i / (n - 1);
      const ShootResult s = S.shoot(c.from, c.angle, ti);
      if (s.length < ti - 1e-12) break;
      t.push_back(ti);
      v.push_back(f(s.end));
    }
    ++rep.geodesics;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const double d = barrier_defect(kappa, lambda, t[i - 1], t[i], t[i + 1], v[i - 1], v[i], v[i + 1]);
      rep.stencil = std::max(rep.stencil, t[i + 1] - t[i - 1]);
      if (d > rep.worst) {
        rep.worst = d;
        rep.worst_chord = c;
        rep.worst_t = t[i];
      }
    }
  }
  rep.pass = rep.worst <= opts.tol;
  return rep;
}

ConcavityReport check_concavity(const ScalarField& f, const Space& S, double lambda,
                                const Region& region, const ConcavityOptions& opts) {
  return check_barrier(f, S, lambda, 0.0, random_chords(S, region, opts.n_geodesics, opts.seed), opts);
}

ConcavityReport check_concavity(const ExprPtr& f, const Space& S, double lambda,
                                const Region& region, const ConcavityOptions& opts) {
  return check_concavity(as_field(f, S), S, lambda, region, opts);
}

std::vector<ConcavityReport> check_certificates(const ExprPtr& f, const Space& S,
                                                const ConcavityOptions& opts) {
  std::vector<ConcavityReport> out;
  for (const Certificate& c : f->certificates) {
    out.push_back(check_concavity(f, S, c.lambda, Region{c.center, c.radius}, opts));
  }
  return out;
}

}  // namespace alexgeo
