#include "mpade/paths.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mpade/errors.hpp"
#include "mpade/quad.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxDepth = 60;

double warp(int sqrt_at, double tau) {
  if (sqrt_at < 0) return tau * tau;
  if (sqrt_at > 0) return 1.0 - (1.0 - tau) * (1.0 - tau);
  return tau;
}

double warp_rate(int sqrt_at, double tau) {
  if (sqrt_at < 0) return 2.0 * tau;
  if (sqrt_at > 0) return 2.0 * (1.0 - tau);
  return 1.0;
}

bool near_point(cplx a, cplx b) { return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)); }

}  // namespace

PathPiece PathPiece::line(cplx from, cplx to, int sqrt_at) {
  PathPiece p;
  p.kind = Kind::line;
  p.from = from;
  p.to = to;
  p.sqrt_at = sqrt_at;
  return p;
}

PathPiece PathPiece::arc(cplx center, double radius, double angle0, double angle1, int sqrt_at) {
  PathPiece p;
  p.kind = Kind::arc;
  p.center = center;
  p.radius = radius;
  p.angle0 = angle0;
  p.angle1 = angle1;
  p.from = center + std::polar(radius, angle0);
  p.to = center + std::polar(radius, angle1);
  p.sqrt_at = sqrt_at;
  return p;
}

cplx PathPiece::point(double t) const {
  if (kind == Kind::line) return from + t * (to - from);
  return center + std::polar(radius, angle0 + t * (angle1 - angle0));
}

cplx PathPiece::velocity(double t) const {
  if (kind == Kind::line) return to - from;
  const double a = angle0 + t * (angle1 - angle0);
  return cplx(0.0, 1.0) * std::polar(radius, a) * (angle1 - angle0);
}

double PathPiece::length() const {
  if (kind == Kind::line) return std::abs(to - from);
  return radius * std::abs(angle1 - angle0);
}

cplx integrate_path(const Path& path, const PathIntegrand& f, const std::vector<cplx>& singular) {
  const QuadratureRule gl = gauss_legendre(20);
  cplx total(0.0, 0.0);
  for (const PathPiece& piece : path) {
    if (piece.length() == 0.0) continue;
    // Singular points other than the substituted end.
    std::vector<cplx> sing;
    for (cplx s : singular) {
      if (piece.sqrt_at < 0 && near_point(s, piece.from)) continue;
      if (piece.sqrt_at > 0 && near_point(s, piece.to)) continue;
      sing.push_back(s);
    }
    const double speed = piece.length();
    std::function<cplx(double, double, int)> rec = [&](double t0, double t1, int depth) -> cplx {
      const double u0 = warp(piece.sqrt_at, t0), u1 = warp(piece.sqrt_at, t1);
      const double len = speed * std::abs(u1 - u0);
      const cplx mid = piece.point(warp(piece.sqrt_at, 0.5 * (t0 + t1)));
      double dist = std::numeric_limits<double>::infinity();
      for (cplx s : sing) dist = std::min(dist, std::abs(mid - s));
      if (len > 0.5 * dist && depth < kMaxDepth) {
        const double tm = 0.5 * (t0 + t1);
        return rec(t0, tm, depth + 1) + rec(tm, t1, depth + 1);
      }
      const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
      cplx s(0.0, 0.0);
      for (int j = 0; j < 20; ++j) {
        const double tau = c + h * gl.nodes[j];
        const double t = warp(piece.sqrt_at, tau);
        const cplx v = f(piece.point(t)) * piece.velocity(t) * warp_rate(piece.sqrt_at, tau);
        s += gl.weights[j] * v;
      }
      return h * s;
    };
    const cplx v = rec(0.0, 1.0, 0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("paths", "path integral is not finite");
    total += v;
  }
  return total;
}

Path path_from_right_end(const IntervalSystem& sys, cplx z, Side side) {
  const double b = sys.hi();
  Path path;
  const cplx d = z - b;
  const double R = std::abs(d);
  if (R == 0.0) return path;
  const bool end_branch = z.imag() == 0.0 && sys.is_endpoint(z.real());
  if (z.imag() == 0.0 && z.real() > b) {
    path.push_back(PathPiece::line(b, z, -1));
    return path;
  }
  double angle;
  if (z.imag() == 0.0) {
    // Real z left of b_g: top arc unless the lower side is requested.
    if (side == Side::none && z.real() >= sys.lo())
      if (sys.band_of(z.real()) >= 0 || sys.gap_of(z.real()) >= 0)
        throw ValidationError("point on the cut left of b_g requires a side");
    angle = (side == Side::minus) ? -kPi : kPi;
  } else {
    angle = std::arg(d);
  }
  path.push_back(PathPiece::line(b, b + R, -1));
  path.push_back(PathPiece::arc(b, R, 0.0, angle, end_branch ? 1 : 0));
  return path;
}

Path path_from_one(const IntervalSystem& sys, cplx z, Side side) {
  Path path;
  if (z == cplx(1.0, 0.0)) return path;
  bool end_branch = false;
  if (z.imag() == 0.0) {
    const double x = z.real();
    for (double e : sys.endpoints) {
      if (x == e) end_branch = true;
      if (e != 0.0 && x == 1.0 / e) end_branch = true;
    }
    if (x > 0.0 && x >= sys.hi() && !(x >= 1.0 / sys.hi() && sys.hi() > 0.0)) {
      // Between b_g and the reflected system on the positive axis: straight segment.
      path.push_back(PathPiece::line(1.0, z, end_branch ? 1 : 0));
      return path;
    }
    const double target = (side == Side::minus) ? -0.5 * kPi : 0.5 * kPi;
    path.push_back(PathPiece::arc(0.0, 1.0, 0.0, target));
    path.push_back(PathPiece::line(std::polar(1.0, target), z, end_branch ? 1 : 0));
    return path;
  }
  const double angle = std::arg(z);
  path.push_back(PathPiece::arc(0.0, 1.0, 0.0, angle));
  path.push_back(PathPiece::line(std::polar(1.0, angle), z));
  return path;
}

}  // namespace mpade
