#include "alexgeo/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "alexgeo/errors.hpp"

namespace alexgeo {

double wrap_2pi(double a) {
  double r = std::fmod(a, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  if (r >= 2 * kPi) r = 0;
  return r;
}

double wrap_pi(double a) {
  double r = wrap_2pi(a + kPi) - kPi;
  return r;
}

double Sigma::offset(double angle) const { return wrap_2pi(angle - start); }

double Sigma::reduce(double angle) const {
  if (closed) {
    double r = std::fmod(angle, length);
    if (r < 0) r += length;
    if (r >= length) r = 0;
    return r;
  }
  double off = offset(angle);
  if (off > length) {
    // Snap to the nearer arc end.
    off = (off - length < 2 * kPi - off) ? length : 0.0;
  }
  return start + off;
}

bool Sigma::contains(double angle, double tol) const {
  if (closed) return true;
  const double off = offset(angle);
  return off <= length + tol || off >= 2 * kPi - tol;
}

double Sigma::arcdist(double a, double b) const {
  if (closed) {
    double d = std::fmod(std::abs(a - b), length);
    return std::min(d, length - d);
  }
  auto pos = [&](double x) {
    double off = offset(x);
    if (off > length) off = (off - length < 2 * kPi - off) ? length : 0.0;
    return off;
  };
  return std::abs(pos(a) - pos(b));
}

double Sigma::diameter() const { return closed ? 0.5 * length : length; }

double Sigma::advance(double a, double s) const {
  if (closed) return reduce(a + s);
  double off = offset(a);
  if (off > length) off = (off - length < 2 * kPi - off) ? length : 0.0;
  return start + std::clamp(off + s, 0.0, length);
}

std::vector<double> Sigma::grid(int n) const {
  std::vector<double> g;
  if (n <= 0) return g;
  g.reserve(n + 1);
  if (closed) {
    for (int i = 0; i < n; ++i) g.push_back(length * i / n);
  } else {
    for (int i = 0; i <= n; ++i) g.push_back(start + length * i / n);
  }
  return g;
}

bool Sigma::euclidean() const {
  return closed ? std::abs(length - 2 * kPi) < 1e-12 : length <= 2 * kPi;
}

double scalar_product(const TangentVec& u, const TangentVec& v) {
  if (u.norm == 0 || v.norm == 0) return 0.0;
  const double a = std::min(u.sigma.arcdist(u.angle, v.angle), kPi);
  return u.norm * v.norm * std::cos(a);
}

double tangent_distance(const TangentVec& u, const TangentVec& v) {
  if (u.norm == 0) return v.norm;
  if (v.norm == 0) return u.norm;
  const double a = std::min(u.sigma.arcdist(u.angle, v.angle), kPi);
  return model_side(0.0, u.norm, v.norm, a);
}

}  // namespace alexgeo
