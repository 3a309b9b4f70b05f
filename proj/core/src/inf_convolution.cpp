#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/model_plane.hpp"

namespace alexgeo {

InfConvolution::InfConvolution(ScalarField f, std::shared_ptr<const Space> S, double eps,
                               InfConvOptions opts)
    : f_(std::move(f)), S_(std::move(S)), eps_(eps), opts_(opts) {
  if (!(eps > 0)) throw DomainError("inf-convolution needs eps > 0");
}

InfConvValue InfConvolution::evaluate(const Point& y0) const {
  const Point y = S_->canonical(y0);
  const Sigma sg = S_->sigma(y);
  const double R = opts_.search_radius > 0 ? opts_.search_radius : 2 * opts_.lipschitz * eps_;
  struct Cand {
    double psi, rho, value;
    Point x;
  };
  auto objective = [&](double psi, double rho) {
    rho = std::clamp(rho, 0.0, R);
    const ShootResult s = S_->shoot(y, psi, rho);
    const double d = s.length;
    return Cand{psi, rho, f_(s.end) + d * d / eps_, s.end};
  };
  Cand best = objective(0, 0);
  const int nd = std::max(4, opts_.directions), nr = std::max(2, opts_.radii);
  for (int i = 0; i < nd; ++i) {
    const double psi = sg.closed ? sg.length * i / nd : sg.start + sg.length * i / (nd - 1);
    for (int k = 1; k <= nr; ++k) {
      const Cand c = objective(psi, R * k / nr);
      if (c.value < best.value) best = c;
    }
  }
  // Compass search in (psi, rho), angular step scaled by the radius.
  double step = R / nr;
  while (step > opts_.tol * std::max(1.0, R)) {
    bool moved = false;
    const double dpsi = step / std::max(best.rho, step);
    const Cand trial[4] = {objective(sg.advance(best.psi, dpsi), best.rho),
                           objective(sg.advance(best.psi, -dpsi), best.rho),
                           objective(best.psi, best.rho + step),
                           objective(best.psi, std::max(0.0, best.rho - step))};
    for (const Cand& c : trial) {
      if (c.value < best.value) {
        best = c;
        moved = true;
      }
    }
    // Polar moves cannot pick a direction at y itself: try a ring instead.
    if (!moved && best.rho < step) {
      for (int i = 0; i < nd; ++i) {
        const double psi = sg.closed ? sg.length * i / nd : sg.start + sg.length * i / (nd - 1);
        const Cand c = objective(psi, step);
        if (c.value < best.value) {
          best = c;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  InfConvValue out;
  out.value = best.value;
  out.minimizer = best.x;
  out.rho = best.rho;
  out.in_domain = best.rho < R * (1 - 1e-6);
  return out;
}

namespace {

double radius_sample(double kappa, double eps, double u) {
  if (kappa > 0) return std::acos(1 - u * (1 - std::cos(eps)));
  if (kappa < 0) return std::acosh(1 + u * (std::cosh(eps) - 1));
  return eps * std::sqrt(u);
}

}  // namespace

SmoothDistance::SmoothDistance(std::shared_ptr<const Space> S, const Point& p, double eps,
                               std::size_t n_mc, std::uint64_t seed)
    : S_(std::move(S)) {
  if (!(eps > 0) || n_mc == 0) throw DomainError("smoothing needs eps > 0 and samples");
  const Point c = S_->canonical(p);
  const Sigma sg = S_->sigma(c);
  pts_.reserve(n_mc);
  for (std::size_t k = 0; k < n_mc; ++k) {
    std::mt19937_64 rng(sample_seed(seed, k));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a = sg.closed ? sg.length * U(rng) : sg.start + sg.length * U(rng);
    const double r = radius_sample(S_->kappa(), eps, U(rng));
    pts_.push_back(S_->shoot(c, a, r).end);
  }
}

double SmoothDistance::operator()(const Point& y) const {
  double s = 0;
  for (const Point& x : pts_) s += S_->distance(x, y);
  return s / static_cast<double>(pts_.size());
}

DirectionalFn SmoothDistance::differential(const Point& y) const {
  std::vector<ExprPtr> parts;
  parts.reserve(pts_.size());
  for (const Point& x : pts_) parts.push_back(dist(x));
  const double w = 1.0 / static_cast<double>(pts_.size());
  return alexgeo::differential(affine(std::vector<double>(parts.size(), w), parts), *S_, y);
}

}  // namespace alexgeo
