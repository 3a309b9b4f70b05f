#include "alexgeo/model_plane.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"

namespace alexgeo {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite input");
}

// Sign class of kappa with |kappa| below this counted as zero.
constexpr double kFlat = 1e-14;

}  // namespace

double rho(double kappa, double x) {
  require_finite(kappa, "rho");
  require_finite(x, "rho");
  if (std::abs(kappa) < kFlat) return 0.5 * x * x;
  const double s = std::sqrt(std::abs(kappa));
  if (kappa > 0) {
    const double h = std::sin(0.5 * x * s);
    return 2.0 * h * h / kappa;
  }
  const double h = std::sinh(0.5 * x * s);
  return 2.0 * h * h / -kappa;
}

double sigma(double kappa, double x) {
  require_finite(kappa, "sigma");
  require_finite(x, "sigma");
  if (std::abs(kappa) < kFlat) return x;
  const double s = std::sqrt(std::abs(kappa));
  return kappa > 0 ? std::sin(x * s) / s : std::sinh(x * s) / s;
}

double theta(double lambda, double t) {
  require_finite(lambda, "theta");
  require_finite(t, "theta");
  if (lambda == 0.0) return t;
  return std::expm1(lambda * t) / lambda;
}

double model_scalar(ModelScalar kind, double k, double x) {
  switch (kind) {
    case ModelScalar::rho: return rho(k, x);
    case ModelScalar::sigma: return sigma(k, x);
    case ModelScalar::theta: return theta(k, x);
  }
  return 0;
}

double model_diameter(double kappa) {
  if (kappa > kFlat) return kPi / std::sqrt(kappa);
  return std::numeric_limits<double>::infinity();
}

double comparison_angle(double kappa, double a, double b, double c) {
  require_finite(kappa, "comparison_angle");
  require_finite(a, "comparison_angle");
  require_finite(b, "comparison_angle");
  require_finite(c, "comparison_angle");
  if (a < 0 || b < 0 || c < 0) throw DomainError("comparison_angle: negative side");
  if (a + b < c || b + c < a) return 0.0;
  if ((a == 0 || c == 0) && b > 0) return kPi;
  if (a == 0 || c == 0) return 0.0;
  if (b > a + c) return kPi;

  double s = 1.0;
  if (std::abs(kappa) >= kFlat) s = std::sqrt(std::abs(kappa));
  a *= s;
  b *= s;
  c *= s;
  if (kappa >= kFlat && a + b + c > 2 * kPi * (1 + 1e-12))
    throw DomainError("comparison_angle: perimeter exceeds 2pi/sqrt(kappa)");

  const double sa = 0.5 * (b + c - a);
  const double sb = 0.5 * (a + c - b);
  const double sc = 0.5 * (a + b - c);
  const double sp = 0.5 * (a + b + c);
  double num, den;
  if (std::abs(kappa) < kFlat) {
    num = sa * sc;
    den = sp * sb;
  } else if (kappa > 0) {
    num = std::sin(sa) * std::sin(sc);
    den = std::sin(std::min(sp, kPi)) * std::sin(sb);
  } else {
    num = std::sinh(sa) * std::sinh(sc);
    den = std::sinh(sp) * std::sinh(sb);
  }
  num = std::max(num, 0.0);
  den = std::max(den, 0.0);
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

double model_side(double kappa, double a, double c, double beta) {
  require_finite(kappa, "model_side");
  require_finite(a, "model_side");
  require_finite(c, "model_side");
  require_finite(beta, "model_side");
  if (a < 0 || c < 0) throw DomainError("model_side: negative side");
  if (beta < -1e-12 || beta > kPi + 1e-12) throw DomainError("model_side: angle outside [0, pi]");
  beta = std::clamp(beta, 0.0, kPi);
  const double hb = std::sin(0.5 * beta);
  if (std::abs(kappa) < kFlat) {
    const double d = a - c;
    return std::sqrt(d * d + 4 * a * c * hb * hb);
  }
  const double s = std::sqrt(std::abs(kappa));
  a *= s;
  c *= s;
  if (kappa > 0) {
    if (a >= kPi || c >= kPi) throw DomainError("model_side: side reaches pi/sqrt(kappa)");
    const double hd = std::sin(0.5 * (a - c));
    const double hav = hd * hd + std::sin(a) * std::sin(c) * hb * hb;
    return 2.0 * std::asin(std::sqrt(std::clamp(hav, 0.0, 1.0))) / s;
  }
  const double hd = std::sinh(0.5 * (a - c));
  const double q = hd * hd + std::sinh(a) * std::sinh(c) * hb * hb;
  return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0))) / s;
}

DevelopmentRecord develop_curve(double kappa,
                                const std::vector<std::pair<double, double>>& t_r,
                                const DevelopOptions& opts) {
  DevelopmentRecord rec;
  rec.kappa = kappa;
  rec.tolerance = opts.tolerance;
  const std::size_t n = t_r.size();
  const double rmax = model_diameter(kappa);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [t, r] = t_r[i];
    require_finite(t, "develop_curve");
    require_finite(r, "develop_curve");
    if (r < 0) throw DomainError("develop_curve: negative radius");
    if (r >= rmax) throw DomainError("develop_curve: radius reaches pi/sqrt(kappa)");
    if (i > 0) {
      const double dt = t - t_r[i - 1].first;
      if (!(dt > 0)) throw DomainError("develop_curve: parameter not strictly increasing");
      if (std::abs(r - t_r[i - 1].second) > dt + opts.tolerance)
        throw DomainError("develop_curve: r is not 1-Lipschitz at sample " + std::to_string(i));
    }
  }

  rec.samples.resize(n);
  rec.turns.assign(n, std::numeric_limits<double>::quiet_NaN());
  auto is_zero = [&](std::size_t i) { return t_r[i].second <= opts.zero_radius; };
  // A piece whose chord equals |r1 - r0| up to rounding lies on a ray from the
  // base. Its angles are exactly 0 or pi; the triangle formulas would return
  // them with an error of order sqrt(rounding).
  auto radial = [](double dt, double r0, double r1) {
    return dt - std::abs(r1 - r0) <= 64 * std::numeric_limits<double>::epsilon() * (dt + r0 + r1);
  };
  double phi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !is_zero(i) && !is_zero(i - 1)) {
      const double dt = t_r[i].first - t_r[i - 1].first;
      // Clamp tiny Lipschitz excess so the chord triangle closes.
      const double chord = std::max(dt, std::abs(t_r[i].second - t_r[i - 1].second));
      if (!radial(dt, t_r[i - 1].second, t_r[i].second))
        phi += comparison_angle(kappa, t_r[i - 1].second, chord, t_r[i].second);
    }
    if (is_zero(i)) rec.splits.push_back(i);
    rec.samples[i] = {t_r[i].first, t_r[i].second, phi};
  }

  double min_turn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (is_zero(i - 1) || is_zero(i) || is_zero(i + 1)) continue;
    const double dm = t_r[i].first - t_r[i - 1].first;
    const double dp = t_r[i + 1].first - t_r[i].first;
    const double r0 = t_r[i - 1].second, r1 = t_r[i].second, r2 = t_r[i + 1].second;
    const double back = radial(dm, r0, r1) ? (r1 > r0 ? 0.0 : kPi)
                                            : comparison_angle(kappa, std::max(dm, std::abs(r1 - r0)), r0, r1);
    const double fwd = radial(dp, r1, r2) ? (r2 > r1 ? kPi : 0.0)
                                          : comparison_angle(kappa, std::max(dp, std::abs(r2 - r1)), r2, r1);
    const double turn = kPi - back - fwd;
    rec.turns[i] = turn;
    min_turn = std::min(min_turn, turn);
  }
  rec.min_turn = std::isfinite(min_turn) ? min_turn : 0.0;
  rec.convex = rec.min_turn >= -opts.tolerance;
  return rec;
}

double development_speed_defect(const DevelopmentRecord& rec) {
  double worst = 0;
  for (std::size_t i = 1; i < rec.samples.size(); ++i) {
    const auto& a = rec.samples[i - 1];
    const auto& b = rec.samples[i];
    if (a.r == 0 || b.r == 0) continue;
    const double dphi = b.phi - a.phi;
    if (dphi > kPi) continue;
    const double len = model_side(rec.kappa, a.r, b.r, dphi);
    worst = std::max(worst, std::abs(len / (b.t - a.t) - 1.0));
  }
  return worst;
}

double barrier_defect(double kappa, double a, double t0, double t1, double t2,
                      double u0, double u1, double u2) {
  const double dm = t1 - t0;
  const double dp = t2 - t1;
  const double T = t2 - t0;
  double w;
  if (std::abs(kappa) < kFlat) {
    w = u0 + (u2 - u0) * dm / T - 0.5 * a * dm * dp;
  } else {
    const double base = a / kappa;
    auto S = [&](double x) { return sigma(kappa, x); };
    w = base + ((u0 - base) * S(dp) + (u2 - base) * S(dm)) / S(T);
  }
  return 2.0 * (w - u1) / (dm * dp);
}

std::string DevelopmentRecord::to_csv() const {
  std::ostringstream os;
  os << "t,r,phi,turn\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << num(samples[i].t) << ',' << num(samples[i].r) << ',' << num(samples[i].phi) << ','
       << (std::isnan(turns[i]) ? std::string() : num(turns[i])) << '\n';
  }
  return os.str();
}

std::string DevelopmentRecord::to_svg(double width_px) const {
  double rmax = 1e-12;
  for (const auto& s : samples) rmax = std::max(rmax, s.r);
  const double half = 0.5 * width_px;
  const double scale = 0.9 * half / rmax;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_px) << "\" height=\""
     << num(width_px) << "\" viewBox=\"0 0 " << num(width_px) << ' ' << num(width_px) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<circle cx=\"" << num(half) << "\" cy=\"" << num(half) << "\" r=\"4\" fill=\"black\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"" << (convex ? "#1f5fbf" : "#c0392b")
     << "\" stroke-width=\"2\" points=\"";
  for (const auto& s : samples) {
    // Clockwise convention: increasing phi turns clockwise on screen.
    const double x = half + scale * s.r * std::cos(s.phi);
    const double y = half + scale * s.r * std::sin(s.phi);
    os << num(x) << ',' << num(y) << ' ';
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace alexgeo
