#pragma once
// Independent reference computations for the tests. Adaptive quadrature here is
// Boost's tanh-sinh rule, which copes with inverse square-root endpoint behavior
// directly; nothing in this file calls the library's own quadrature.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>

namespace oracle {

using cplx = std::complex<double>;

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, tol);
}

// |w(x)| = prod sqrt|x - e|
inline double abs_w(const std::vector<double>& e, double x) {
  double p = 1.0;
  for (double v : e) p *= std::sqrt(std::abs(x - v));
  return p;
}

// Number of endpoints to the right of x decides the sign of -i w_+ on a band.
inline double band_sign(const std::vector<double>& e, int k) {
  const int g = static_cast<int>(e.size()) / 2 - 1;
  return ((g - k) % 2 == 0) ? 1.0 : -1.0;
}

// Both ends are assumed to be endpoints; the distance to the nearer one comes
// from the rule's complement argument so no cancellation happens there.
inline double singular_integral(const std::vector<double>& e, const std::function<double(double)>& h, double lo,
                                double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [&](double x, double xc) {
        const double near_end = x < 0.5 * (lo + hi) ? lo : hi;
        double p = std::sqrt(std::abs(xc));
        for (double v : e)
          if (v != near_end) p *= std::sqrt(std::abs(x - v));
        return h(x) / p;
      },
      lo, hi, 1e-14);
}

// f(z) = int rho(x) dx / (pi s_k |w(x)| (z - x)) summed over bands.
inline cplx markov(const std::vector<double>& e, const std::function<double(double)>& rho, cplx z) {
  cplx s(0.0, 0.0);
  for (std::size_t k = 0; k + 1 < e.size(); k += 2) {
    const double sk = band_sign(e, static_cast<int>(k / 2));
    const auto part = [&](bool re) {
      return singular_integral(
          e, [&](double x) { const cplx v = rho(x) / (M_PI * sk) / (z - x); return re ? v.real() : v.imag(); },
          e[k], e[k + 1]);
    };
    s += cplx(part(true), part(false));
  }
  return s;
}

// Arcsine-measure Cauchy transform at real z > 1 from its Laurent series.
inline double chebyshev_markov_series(double z) {
  double s = 0.0, c = 1.0;  // c_{2j} = binom(2j, j) / 4^j
  double zp = 1.0 / z;
  for (int j = 0; j < 400; ++j) {
    s += c * zp;
    c *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
    zp /= z * z;
  }
  return s;
}

inline double elliptic_k(double k) { return boost::math::ellint_1(k); }

// theta(0) for g = 1 and B = i y by direct partial sums
inline double theta0_g1(double y) {
  double s = 1.0;
  for (int n = 1; n < 50; ++n) s += 2.0 * std::exp(-M_PI * y * n * n);
  return s;
}

}  // namespace oracle
