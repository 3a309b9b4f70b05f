#include <cmath>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"

namespace alexgeo {

namespace {

constexpr double kApex = 1e-15;

const PolarPoint& polar(const Point& p) {
  const auto* a = std::get_if<PolarPoint>(&p);
  if (!a) throw DomainError("expected polar coordinates [r, phi]");
  return *a;
}

double reduce_mod(double a, double m) {
  double r = std::fmod(a, m);
  if (r < 0) r += m;
  if (r >= m) r = 0;
  return r;
}

// Signed angular difference q - p reduced into (-m/2, m/2].
double signed_wrap(double d, double m) {
  double r = reduce_mod(d, m);
  if (r > 0.5 * m) r -= m;
  return r;
}

void check_theta(double theta, const char* what) {
  if (!std::isfinite(theta) || theta <= 0) {
    throw DomainError(std::string(what) + " angle must be positive");
  }
  if (theta > 2 * kPi + 1e-12) {
    throw CurvatureBoundError(std::string(what) + " angle " + num(theta) +
                              " exceeds 2pi");
  }
}

struct V3 {
  double x, y, z;
};
double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
V3 cross(V3 a, V3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(V3 a) { return std::sqrt(dot(a, a)); }
V3 sph(double r, double lon) {
  return {std::sin(r) * std::cos(lon), std::sin(r) * std::sin(lon), std::cos(r)};
}
double great_circle(V3 a, V3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

// Direction at (r, lon) of the tangent vector t, relative to the outward
// radial direction.
double frame_angle(double r, double lon, V3 t) {
  const V3 er{std::cos(r) * std::cos(lon), std::cos(r) * std::sin(lon), -std::sin(r)};
  const V3 ep{-std::sin(lon), std::cos(lon), 0};
  return wrap_2pi(std::atan2(dot(t, ep), dot(t, er)));
}

}  // namespace

// ---------------------------------------------------------------- Cone

Cone::Cone(double theta, double sample_radius)
    : theta_(theta), sample_radius_(sample_radius) {
  check_theta(theta, "cone");
  if (theta_ > 2 * kPi) theta_ = 2 * kPi;
}

std::string Cone::name() const {
  return is_plane() ? "plane" : "cone(" + num(theta_) + ")";
}

bool Cone::is_plane() const { return theta_ >= 2 * kPi - 1e-12; }

Point Cone::canonical(const Point& p) const {
  PolarPoint a = polar(p);
  if (!std::isfinite(a.r) || !std::isfinite(a.phi)) throw DomainError("non-finite point");
  if (a.r < -1e-12) throw DomainError("negative radius " + num(a.r));
  if (a.r <= kApex) return PolarPoint{0, 0};
  return PolarPoint{a.r, reduce_mod(a.phi, theta_)};
}

double Cone::distance(const Point& p0, const Point& q0) const {
  const PolarPoint p = polar(canonical(p0)), q = polar(canonical(q0));
  if (p.r == 0) return q.r;
  if (q.r == 0) return p.r;
  const double a = std::abs(signed_wrap(q.phi - p.phi, theta_));
  if (a > kPi) return p.r + q.r;
  return model_side(0, p.r, q.r, a);
}

DirectionSet Cone::directions_to(const Point& p0, const Point& q0) const {
  const PolarPoint p = polar(canonical(p0)), q = polar(canonical(q0));
  DirectionSet out;
  if (distance(p, q) <= 0) return out;
  if (p.r == 0) {
    out.angles.push_back(q.phi);
    return out;
  }
  if (q.r == 0) {
    out.angles.push_back(kPi);
    return out;
  }
  const double d = signed_wrap(q.phi - p.phi, theta_);
  std::vector<double> deltas{d};
  if (!is_plane() && std::abs(std::abs(d) - 0.5 * theta_) < 1e-12) deltas.push_back(-d);
  for (double dl : deltas) {
    const double qx = q.r * std::cos(dl) - p.r, qy = q.r * std::sin(dl);
    out.angles.push_back(wrap_2pi(std::atan2(qy, qx)));
  }
  return out;
}

Sigma Cone::sigma(const Point& p0) const {
  const PolarPoint p = polar(canonical(p0));
  if (p.r == 0) return Sigma{theta_, true, 0};
  return Sigma{};
}

ShootResult Cone::shoot(const Point& p0, double angle, double length) const {
  const PolarPoint p = polar(canonical(p0));
  ShootResult res;
  if (length <= 0) {
    res.end = p;
    res.back = angle;
    return res;
  }
  if (p.r == 0) {
    res.end = PolarPoint{length, reduce_mod(angle, theta_)};
    res.length = length;
    res.back = kPi;
    return res;
  }
  const double c = std::cos(angle), s = std::sin(angle);
  if (!is_plane() && c < 0 && std::abs(p.r * s) <= 1e-14 * std::max(1.0, p.r) &&
      length >= p.r - 1e-15) {
    res.end = PolarPoint{0, 0};
    res.length = p.r;
    res.stop = StopKind::vertex;
    res.back = p.phi;
    return res;
  }
  const double ex = p.r + length * c, ey = length * s;
  const double R = std::hypot(ex, ey);
  res.length = length;
  if (R <= kApex) {
    res.end = PolarPoint{0, 0};
    res.stop = is_plane() ? StopKind::none : StopKind::vertex;
    res.back = p.phi;
    return res;
  }
  const double sweep = std::atan2(ey, ex);
  res.end = PolarPoint{R, reduce_mod(p.phi + sweep, theta_)};
  // Unit outward radial at the end and backward direction -d.
  const double ux = ex / R, uy = ey / R;
  res.back = wrap_2pi(std::atan2(ux * (-s) - uy * (-c), ux * (-c) + uy * (-s)));
  return res;
}

Point Cone::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r = sample_radius_ * std::sqrt(U(rng));
  const double phi = theta_ * U(rng);
  return canonical(PolarPoint{r, phi});
}

std::vector<SingularPoint> Cone::singular_points() const {
  if (is_plane()) return {};
  return {SingularPoint{PolarPoint{0, 0}, theta_, false, "apex"}};
}

double Cone::diameter_bound() const { return std::numeric_limits<double>::infinity(); }

std::array<double, 2> Cone::chart(const Point& p0) const {
  const PolarPoint p = polar(canonical(p0));
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

// ---------------------------------------------------------------- Spindle

Spindle::Spindle(double theta) : theta_(theta) {
  check_theta(theta, "spindle");
  if (theta_ > 2 * kPi) theta_ = 2 * kPi;
}

std::string Spindle::name() const {
  return is_sphere() ? "sphere" : "spindle(" + num(theta_) + ")";
}

bool Spindle::is_sphere() const { return theta_ >= 2 * kPi - 1e-12; }

Point Spindle::canonical(const Point& p) const {
  PolarPoint a = polar(p);
  if (!std::isfinite(a.r) || !std::isfinite(a.phi)) throw DomainError("non-finite point");
  if (a.r < -1e-12 || a.r > kPi + 1e-12) throw DomainError("spindle radius " + num(a.r) + " outside [0, pi]");
  if (a.r <= kApex) return PolarPoint{0, 0};
  if (a.r >= kPi - kApex) return PolarPoint{kPi, 0};
  return PolarPoint{a.r, reduce_mod(a.phi, theta_)};
}

double Spindle::distance(const Point& p0, const Point& q0) const {
  const PolarPoint p = polar(canonical(p0)), q = polar(canonical(q0));
  if (p.r == 0) return q.r;
  if (q.r == 0) return p.r;
  if (p.r == kPi) return kPi - q.r;
  if (q.r == kPi) return kPi - p.r;
  const double a = std::min(std::abs(signed_wrap(q.phi - p.phi, theta_)), kPi);
  return great_circle(sph(p.r, 0), sph(q.r, a));
}

DirectionSet Spindle::directions_to(const Point& p0, const Point& q0) const {
  const PolarPoint p = polar(canonical(p0)), q = polar(canonical(q0));
  DirectionSet out;
  if (distance(p, q) <= 0) return out;
  const bool p_apex = p.r == 0 || p.r == kPi;
  const bool q_apex = q.r == 0 || q.r == kPi;
  if (p_apex) {
    if (q_apex) {
      out.whole = true;
    } else {
      out.angles.push_back(q.phi);
    }
    return out;
  }
  if (q_apex) {
    out.angles.push_back(q.r == 0 ? kPi : 0.0);
    return out;
  }
  const double d = signed_wrap(q.phi - p.phi, theta_);
  std::vector<double> deltas{d};
  if (!is_sphere() && std::abs(std::abs(d) - 0.5 * theta_) < 1e-12) deltas.push_back(-d);
  const V3 P = sph(p.r, 0);
  for (double dl : deltas) {
    const V3 Q = sph(q.r, dl);
    if (norm(V3{P.x + Q.x, P.y + Q.y, P.z + Q.z}) < 1e-12) {
      out.whole = true;
      out.angles.clear();
      return out;
    }
    const double pq = dot(P, Q);
    const V3 u{Q.x - pq * P.x, Q.y - pq * P.y, Q.z - pq * P.z};
    out.angles.push_back(frame_angle(p.r, 0, u));
  }
  return out;
}

Sigma Spindle::sigma(const Point& p0) const {
  const PolarPoint p = polar(canonical(p0));
  if (p.r == 0 || p.r == kPi) return Sigma{theta_, true, 0};
  return Sigma{};
}

ShootResult Spindle::shoot(const Point& p0, double angle, double length) const {
  const PolarPoint p = polar(canonical(p0));
  ShootResult res;
  if (length <= 0) {
    res.end = p;
    res.back = angle;
    return res;
  }
  // Meridian travel, either from an apex or along beta in {0, pi}.
  auto meridian = [&](double r0, double lon, double dir) {
    // dir = +1 heading south (increasing r), -1 north.
    const double hit = dir > 0 ? kPi - r0 : r0;
    if (!is_sphere() && length >= hit - 1e-15) {
      res.length = hit;
      res.stop = StopKind::vertex;
      res.end = PolarPoint{dir > 0 ? kPi : 0.0, 0};
      res.back = reduce_mod(lon, theta_);
      return res;
    }
    res.length = length;
    double psi = r0 + dir * length;
    psi = std::remainder(psi, 2 * kPi);  // (-pi, pi]
    double r = psi, l = lon, dr = dir;
    if (psi < 0) {
      r = -psi;
      l = lon + kPi;
      dr = -dir;
    }
    res.end = canonical(PolarPoint{r, l});
    const auto& e = std::get<PolarPoint>(res.end);
    if (e.r == 0 || e.r == kPi) {
      res.back = reduce_mod(l, theta_);
      if (!is_sphere()) res.stop = StopKind::vertex;
    } else {
      res.back = dr > 0 ? kPi : 0.0;
    }
    return res;
  };
  if (p.r == 0) return meridian(0, angle, +1);
  if (p.r == kPi) return meridian(kPi, angle, -1);
  const double c = std::cos(angle), s = std::sin(angle);
  if (std::abs(std::sin(p.r) * s) <= 1e-14) return meridian(p.r, p.phi, c > 0 ? 1 : -1);

  const V3 X0 = sph(p.r, 0);
  const V3 er{std::cos(p.r), 0, -std::sin(p.r)};
  const V3 u{c * er.x, s, c * er.z};
  const int n = std::max(1, static_cast<int>(std::ceil(length / (kPi / 4))));
  double hx = X0.x, hy = X0.y, lon = 0;
  V3 X = X0;
  for (int i = 1; i <= n; ++i) {
    const double si = length * i / n;
    X = {std::cos(si) * X0.x + std::sin(si) * u.x, std::cos(si) * X0.y + std::sin(si) * u.y,
         std::cos(si) * X0.z + std::sin(si) * u.z};
    lon += std::atan2(hx * X.y - hy * X.x, hx * X.x + hy * X.y);
    hx = X.x;
    hy = X.y;
  }
  const double h = std::hypot(X.x, X.y);
  const double r = std::atan2(h, X.z);
  const V3 T{-std::sin(length) * X0.x + std::cos(length) * u.x,
             -std::sin(length) * X0.y + std::cos(length) * u.y,
             -std::sin(length) * X0.z + std::cos(length) * u.z};
  res.length = length;
  res.end = canonical(PolarPoint{r, p.phi + lon});
  const double lon3 = std::atan2(X.y, X.x);
  res.back = frame_angle(r, lon3, V3{-T.x, -T.y, -T.z});
  return res;
}

Point Spindle::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double z = 2 * U(rng) - 1;
  return canonical(PolarPoint{std::acos(z), theta_ * U(rng)});
}

std::vector<SingularPoint> Spindle::singular_points() const {
  if (is_sphere()) return {};
  return {SingularPoint{PolarPoint{0, 0}, theta_, false, "north apex"},
          SingularPoint{PolarPoint{kPi, 0}, theta_, false, "south apex"}};
}

std::array<double, 2> Spindle::chart(const Point& p0) const {
  const PolarPoint p = polar(canonical(p0));
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

SpacePtr make_cone(double theta) { return std::make_shared<Cone>(theta); }
SpacePtr make_plane() { return std::make_shared<Cone>(2 * kPi); }
SpacePtr make_spindle(double theta) { return std::make_shared<Spindle>(theta); }

}  // namespace alexgeo
