#pragma once

#include <functional>
#include <vector>

#include "mpade/scalarmaps.hpp"

namespace mpade {

// Closed-form objects for one interval [a, b], evaluated without the
// multi-interval machinery. Integrals over [a, b] use x = c + r cos(theta)
// with composite Gauss-Legendre in theta.
class SingleInterval {
 public:
  SingleInterval(double a, double b, std::function<double(double)> mu_dot, int panels = 24, int order = 24);

  double a() const { return a_; }
  double b() const { return b_; }

  cplx w(cplx z) const;   // sqrt((z-a)(z-b)), ~ z at infinity
  cplx wt(cplx z) const;  // z w(1/z), wt(0) = 1
  cplx psi(cplx z) const;
  // Blaschke product over the scheme; infinite points contribute psi(z).
  cplx psi_n(const InterpolationScheme& scheme, cplx z) const;
  cplx S(cplx z) const;

  // condenser quantities; need [a, b] inside (-1, 1)
  double K() const;              // complete elliptic integral, modulus (b - a)/(1 - ab)
  double c() const;              // (1 - ab)/(2K)
  double omega_density(double x) const;
  double rho() const;
  cplx phi(cplx z) const;
  double G() const;
  cplx D(cplx z) const;

  cplx pade_rhs(const InterpolationScheme& scheme, cplx z) const;
  cplx critical_rhs(int n, cplx z) const;

 private:
  // int_0^pi F(c + r cos theta) dtheta
  template <class F>
  auto theta_integral(F&& f) const;

  double a_, b_, c0_, r0_;
  std::function<double(double)> mu_dot_;
  std::vector<double> th_, wt_;
};

}  // namespace mpade
