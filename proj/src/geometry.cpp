#include "mpade/geometry.hpp"

#include <cmath>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

int IntervalSystem::band_of(double x) const {
  for (int k = 0; k < bands(); ++k)
    if (x > a(k) && x < b(k)) return k;
  return -1;
}

int IntervalSystem::gap_of(double x) const {
  for (int i = 0; i < genus; ++i)
    if (x > gap_lo(i) && x < gap_hi(i)) return i;
  return -1;
}

bool IntervalSystem::is_endpoint(double x, double tol) const {
  for (double e : endpoints)
    if (std::abs(x - e) <= tol) return true;
  return false;
}

IntervalSystem make_system(const std::vector<double>& endpoints) {
  if (endpoints.size() < 2 || endpoints.size() % 2 != 0) {
    std::ostringstream os;
    os << "endpoint count must be even and >= 2, got " << endpoints.size();
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    if (!std::isfinite(endpoints[i])) {
      std::ostringstream os;
      os << "endpoint " << i << " is not finite";
      throw ValidationError(os.str());
    }
    if (i > 0 && !(endpoints[i] > endpoints[i - 1])) {
      std::ostringstream os;
      os << "endpoints must be strictly increasing; violated at index " << i;
      throw ValidationError(os.str());
    }
  }
  IntervalSystem sys;
  sys.endpoints = endpoints;
  sys.genus = static_cast<int>(endpoints.size()) / 2 - 1;
  sys.unit_disk = endpoints.front() > -1.0 && endpoints.back() < 1.0;
  return sys;
}

namespace {

[[noreturn]] void missing_side(const char* what, double x) {
  std::ostringstream os;
  os.precision(17);
  os << what << " evaluated on its cut at x = " << x << " without a side";
  throw ValidationError(os.str());
}

}  // namespace

BranchValue eval_w(const IntervalSystem& sys, cplx z, Side side) {
  BranchValue out;
  if (z.imag() != 0.0) {
    cplx p(1.0, 0.0);
    for (double e : sys.endpoints) p *= std::sqrt(z - e);
    out.value = p;
    return out;
  }
  const double x = z.real();
  if (sys.is_endpoint(x)) {
    out.on_cut = true;
    out.side = side;
    return out;
  }
  const bool on_band = sys.band_of(x) >= 0;
  if (on_band && side == Side::none) missing_side("w", x);
  const double s = (side == Side::minus) ? -1.0 : 1.0;
  double mag = 1.0;
  int below = 0;  // endpoints to the right of x contribute i * s
  for (double e : sys.endpoints) {
    mag *= std::sqrt(std::abs(x - e));
    if (x < e) ++below;
  }
  // (i s)^below; below is odd exactly on bands.
  cplx phase(1.0, 0.0);
  const int q = below % 4;
  const cplx is(0.0, s);
  for (int j = 0; j < q; ++j) phase *= is;
  if (!on_band) phase = cplx(phase.real(), 0.0);
  out.value = mag * phase;
  if (on_band) {
    out.on_cut = true;
    out.side = side;
  }
  return out;
}

BranchValue eval_w_tilde(const IntervalSystem& sys, cplx z, Side side) {
  BranchValue out;
  if (z.imag() != 0.0) {
    cplx p(1.0, 0.0);
    for (double e : sys.endpoints) p *= std::sqrt(1.0 - e * z);
    out.value = p;
    return out;
  }
  const double x = z.real();
  const double s = (side == Side::minus) ? -1.0 : 1.0;
  cplx p(1.0, 0.0);
  int negatives = 0;
  for (double e : sys.endpoints) {
    const double f = 1.0 - e * x;
    if (f == 0.0) {
      out.on_cut = true;
      out.side = side;
      return out;
    }
    if (f > 0.0) {
      p *= std::sqrt(f);
    } else {
      ++negatives;
      const double sigma = (e > 0.0 ? -1.0 : 1.0) * s;
      p *= cplx(0.0, sigma * std::sqrt(-f));
    }
  }
  const bool on_cut = (negatives % 2) == 1;
  if (on_cut && side == Side::none) missing_side("w~", x);
  out.value = on_cut ? p : cplx(p.real(), 0.0);
  if (on_cut) {
    out.on_cut = true;
    out.side = side;
  }
  return out;
}

cplx w_of(const IntervalSystem& sys, cplx z, Side side) { return eval_w(sys, z, side).value; }
cplx wt_of(const IntervalSystem& sys, cplx z, Side side) { return eval_w_tilde(sys, z, side).value; }

MobiusValue mobius(double x0, cplx z) {
  if (!(std::abs(x0) < 1.0)) throw ValidationError("mobius pivot must satisfy |x0| < 1");
  const cplx den = 1.0 - z * x0;
  if (den == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), true};
  return {(z - x0) / den, false};
}

MobiusValue mobius_inv(double x0, cplx t) {
  if (!(std::abs(x0) < 1.0)) throw ValidationError("mobius pivot must satisfy |x0| < 1");
  const cplx den = 1.0 + t * x0;
  if (den == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), true};
  return {(t + x0) / den, false};
}

}  // namespace mpade
