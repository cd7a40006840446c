#pragma once

#include <functional>
#include <vector>

#include "mpade/geometry.hpp"

namespace mpade {

struct QuadratureRule {
  enum class Kind { band_cos, gap_cos, circle_trapezoid, log_endpoint };
  Kind kind = Kind::band_cos;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
QuadratureRule gauss_legendre(int n);

// One band or gap in the angle variable x = c + r cos(theta), theta in (0, pi).
// For a band  int h dx / w_+ = -i int h(x) dens(x) dtheta,
// for a gap   int h dx / w   =    int h(x) dens(x) dtheta,
// with dens = 1 / (sign * prod_{other endpoints} sqrt|x - e|).
struct Panel {
  bool is_band = true;
  int index = 0;
  double lo = 0.0, hi = 0.0, c = 0.0, r = 0.0, sign = 1.0;
  std::vector<double> others;
  std::vector<double> theta, weight, x, dens;

  double density(double y) const;
  // prod_{other endpoints} sqrt|y - e|
  double others_root(double y) const;
};

// The smooth angle integrand F(x) evaluated by callers.
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

struct EndpointZero {
  double e = 0.0;
  double alpha = 0.0;
};

class Quadrature {
 public:
  explicit Quadrature(IntervalSystem sys, int order = 256);

  const IntervalSystem& system() const { return sys_; }
  int order() const { return order_; }
  const std::vector<Panel>& bands() const { return bands_; }
  const std::vector<Panel>& gaps() const { return gaps_; }

  // sum_k int_{a_k}^{b_k} h dx / w_side
  cplx band_integral(const ComplexFn& h, Side side = Side::plus) const;
  cplx band_integral(int k, const ComplexFn& h, Side side = Side::plus) const;
  double band_integral_imag(const RealFn& h) const;  // Im of the + side value, h real
  // int over gap i of h dx / w
  double gap_integral(int i, const RealFn& h) const;
  cplx gap_integral_c(int i, const ComplexFn& h) const;

  // int_Delta h(x) / (x - z) dx / w_+(x); z on a band needs a side.
  cplx cauchy_band(const ComplexFn& h, cplx z, Side side = Side::none) const;
  // int over gap i of h(y) / (y - z) dy / w(y); z inside the gap needs a side.
  cplx cauchy_gap(int i, const ComplexFn& h, cplx z, Side side = Side::none) const;

  // int_Delta log h(x) g(x) dx / |w(x)| with h ~ |x - e|^alpha at the declared endpoints.
  double log_endpoint_integral(const RealFn& h, const std::vector<EndpointZero>& zeros, const RealFn& g) const;

  // Band k on an angle rule graded toward the ends listed (lo and/or hi).
  Panel graded_band(int k, bool grade_lo, bool grade_hi) const;

 private:
  Panel make_panel(bool band, int index, double lo, double hi) const;

  IntervalSystem sys_;
  int order_;
  std::vector<Panel> bands_, gaps_;
};

// int_0^pi F(x(theta)) dtheta over the panel rule.
cplx panel_sum(const Panel& p, const ComplexFn& F);
// int_0^pi F(x(theta)) / (x(theta) - z) dtheta with pole subtraction near the panel.
// F must be smooth in x on [lo, hi]; z inside (lo, hi) on the axis needs a side.
// at_nodes, when given, holds F at the panel nodes.
cplx panel_cauchy(const Panel& p, const ComplexFn& F, cplx z, Side side,
                  const std::vector<cplx>* at_nodes = nullptr);
// int_0^pi dtheta / (c + r cos(theta) - z), with boundary values for a side.
cplx panel_kernel(const Panel& p, cplx z, Side side);

// (1/N) sum |fn(exp(2 pi i j / N))|^2
double circle_mean(const std::function<cplx(cplx)>& fn, int n_nodes);

// Angle rule on [0, pi]: uniform Gauss-Legendre panels, geometric grading at chosen ends.
void graded_theta_rule(int order, bool grade_lo, bool grade_hi, std::vector<double>& theta, std::vector<double>& weight);

}  // namespace mpade
