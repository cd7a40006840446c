#include "mpade/single_interval.hpp"

#include <cmath>
#include <numbers>

#include "mpade/errors.hpp"
#include "mpade/quad.hpp"

namespace mpade {

namespace {
constexpr double kPi = std::numbers::pi;
}

SingleInterval::SingleInterval(double a, double b, std::function<double(double)> mu_dot, int panels, int order)
    : a_(a), b_(b), c0_(0.5 * (a + b)), r0_(0.5 * (b - a)), mu_dot_(std::move(mu_dot)) {
  if (!(a < b)) throw ValidationError("single interval needs a < b");
  const QuadratureRule gl = gauss_legendre(order);
  const double h = kPi / panels;
  for (int p = 0; p < panels; ++p)
    for (int j = 0; j < order; ++j) {
      th_.push_back(h * (p + 0.5 * (gl.nodes[j] + 1.0)));
      wt_.push_back(0.5 * h * gl.weights[j]);
    }
}

template <class F>
auto SingleInterval::theta_integral(F&& f) const {
  decltype(f(0.0)) s{};
  for (std::size_t j = 0; j < th_.size(); ++j) s += wt_[j] * f(c0_ + r0_ * std::cos(th_[j]));
  return s;
}

cplx SingleInterval::w(cplx z) const { return std::sqrt(z - a_) * std::sqrt(z - b_); }

cplx SingleInterval::wt(cplx z) const { return std::sqrt(1.0 - a_ * z) * std::sqrt(1.0 - b_ * z); }

cplx SingleInterval::psi(cplx z) const { return (z - c0_ - w(z)) / r0_; }

cplx SingleInterval::psi_n(const InterpolationScheme& scheme, cplx z) const {
  const cplx pz = psi(z);
  cplx p(1.0, 0.0);
  for (const auto& e : scheme.points) {
    cplx f = pz;
    if (!e.infinite) {
      const cplx pe = psi(e.z);
      f = (pz - pe) / (1.0 - pz * std::conj(pe));
    }
    for (int k = 0; k < e.mult; ++k) p *= f;
  }
  return p;
}

// dx / w_+ = -i dtheta on [a, b]
cplx SingleInterval::S(cplx z) const {
  const cplx I = theta_integral([&](double x) { return cplx(std::log(mu_dot_(x)), 0.0) / (x - z); });
  return std::exp(-w(z) * I / (2.0 * kPi));
}

double SingleInterval::K() const {
  if (!(a_ > -1.0 && b_ < 1.0)) throw ValidationError("condenser quantities need [a, b] inside (-1, 1)");
  return std::comp_ellint_1((b_ - a_) / (1.0 - a_ * b_));
}

double SingleInterval::c() const { return (1.0 - a_ * b_) / (2.0 * K()); }

double SingleInterval::omega_density(double x) const {
  return c() / (std::sqrt((x - a_) * (b_ - x)) * wt(x).real());
}

// log rho = -pi c int_b^1 ds / (w wt), with s = b + (1 - b) t^2
double SingleInterval::rho() const {
  const QuadratureRule gl = gauss_legendre(40);
  double s = 0.0;
  for (int j = 0; j < 40; ++j) {
    const double t = 0.5 * (gl.nodes[j] + 1.0);
    const double x = b_ + (1.0 - b_) * t * t;
    s += 0.5 * gl.weights[j] * 2.0 * std::sqrt(1.0 - b_) / (std::sqrt(x - a_) * wt(x).real());
  }
  return std::exp(-kPi * c() * s);
}

// Arc of the unit circle from 1 to z/|z|, then the radial segment to z.
cplx SingleInterval::phi(cplx z) const {
  const double cc = c();
  const double alpha = std::arg(z), rad = std::abs(z);
  const QuadratureRule gl = gauss_legendre(24);
  const auto f = [&](cplx s) { return 1.0 / (w(s) * wt(s)); };
  cplx I(0.0, 0.0);
  const int arc_panels = 16;
  for (int p = 0; p < arc_panels; ++p)
    for (int j = 0; j < 24; ++j) {
      const double t = alpha * (p + 0.5 * (gl.nodes[j] + 1.0)) / arc_panels;
      const cplx s = std::polar(1.0, t);
      I += 0.5 * gl.weights[j] * (alpha / arc_panels) * f(s) * cplx(0.0, 1.0) * s;
    }
  const int rad_panels = 16;
  const cplx u = std::polar(1.0, alpha);
  for (int p = 0; p < rad_panels; ++p)
    for (int j = 0; j < 24; ++j) {
      const double t = 1.0 + (rad - 1.0) * (p + 0.5 * (gl.nodes[j] + 1.0)) / rad_panels;
      I += 0.5 * gl.weights[j] * ((rad - 1.0) / rad_panels) * f(t * u) * u;
    }
  return std::exp(kPi * cc * I);
}

// dx / |w| = dtheta and wt > 0 on [a, b]
double SingleInterval::G() const {
  const double cc = c();
  return std::exp(cc * theta_integral([&](double x) { return std::log(mu_dot_(x)) / wt(x).real(); }));
}

cplx SingleInterval::D(cplx z) const {
  const double logG = std::log(G());
  const cplx I = theta_integral([&](double x) {
    const cplx ker = (1.0 - 2.0 * x * z + x * x) / ((x - z) * (1.0 - x * z));
    return ker * (std::log(mu_dot_(x)) - logG) / wt(x).real();
  });
  return std::exp(-(w(z) * wt(z)) * I / (2.0 * kPi));
}

cplx SingleInterval::pade_rhs(const InterpolationScheme& scheme, cplx z) const {
  const cplx s = S(z);
  return 2.0 * s * s / w(z) * psi_n(scheme, z);
}

cplx SingleInterval::critical_rhs(int n, cplx z) const {
  const cplx d = D(z);
  return 2.0 * G() * d * d / w(z) * std::pow(rho() / phi(z), 2 * n);
}

}  // namespace mpade
