#pragma once

#include <functional>
#include <vector>

#include "mpade/geometry.hpp"

namespace mpade {

// A straight segment or a circular arc, parameterized by t in [0, 1].
// sqrt_at = -1 (start) or +1 (end) applies t = tau^2 or t = 1 - (1 - tau)^2, which
// absorbs an inverse square-root singularity at that end.
struct PathPiece {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  cplx from{0.0, 0.0}, to{0.0, 0.0};
  cplx center{0.0, 0.0};
  double radius = 0.0, angle0 = 0.0, angle1 = 0.0;
  int sqrt_at = 0;

  static PathPiece line(cplx from, cplx to, int sqrt_at = 0);
  static PathPiece arc(cplx center, double radius, double angle0, double angle1, int sqrt_at = 0);

  cplx point(double t) const;
  cplx velocity(double t) const;
  double length() const;
};

using Path = std::vector<PathPiece>;
using PathIntegrand = std::function<cplx(cplx)>;

// Composite 20-point Gauss-Legendre along the path, panels refined until each is at
// most half as long as its distance to the nearest singular point.
cplx integrate_path(const Path& path, const PathIntegrand& f, const std::vector<cplx>& singular);

// Path from b_g to z: real segment b -> b + R, then the arc of radius R = |z - b|
// about b up to z. Real z left of b_g uses the upper (side plus/none) or lower arc.
Path path_from_right_end(const IntervalSystem& sys, cplx z, Side side);

// Path from 1 to z avoiding Delta and its reflection: unit-circle arc then a radial
// segment for complex z; for real z the arc to +i or -i, then a segment to z.
Path path_from_one(const IntervalSystem& sys, cplx z, Side side);

}  // namespace mpade
