#pragma once

#include <functional>
#include <vector>

#include "mpade/basis.hpp"
#include "mpade/paths.hpp"

namespace mpade {

// One point of an interpolation multiset; infinite points carry no z.
struct SchemePoint {
  cplx z{0.0, 0.0};
  bool infinite = false;
  int mult = 1;
};

struct InterpolationScheme {
  std::vector<SchemePoint> points;
  int n = 0;

  static InterpolationScheme at_infinity(int n);
  // {1/x_j with multiplicity 2}; x_j = 0 maps to infinity.
  static InterpolationScheme reflected_squares(const std::vector<double>& x);

  int total() const;
  int infinite_count() const;
  // Conjugate symmetry, 2n points, finite points at distance >= margin from the hull.
  void validate(const IntervalSystem& sys, double margin = 1e-3) const;
};

// Positive weight on Delta with caller-declared endpoint vanishing orders.
struct DensityProfile {
  std::function<double(double)> eval;
  std::vector<EndpointZero> zeros;
};

class Psi {
 public:
  Psi(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme);
  // z on [a_0, b_g) needs a side.
  cplx operator()(cplx z, Side side = Side::none) const;
  // Raw band sums before the fractional part; omega() applies fr{}.
  std::vector<cplx> omega_raw() const;
  std::vector<double> omega() const;

 private:
  struct Term {
    cplx e;
    int mult;
    ComplexPoly m, dm, ddm;
  };
  cplx integrand(cplx s) const;

  const Quadrature* quad_;
  std::vector<Term> terms_;
  int k_inf_ = 0;
  RealPoly m_inf_;
  std::vector<cplx> singular_;
};

cplx psi_n(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme, cplx z,
           Side side = Side::none);
std::vector<double> omega_n(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme);

// fr{} after clamping imaginary dust; throws when the imaginary part exceeds 1e-9.
double fractional_part(cplx v);

// Condenser map normalized at 1; needs Delta inside (-1, 1).
cplx phi_map(const Quadrature& quad, const CondenserBasis& cb, cplx z, Side side = Side::none);
double rho(const Quadrature& quad, const CondenserBasis& cb);

struct CondenserMeasure {
  std::function<double(double)> density;  // d omega / dx on the bands
  std::vector<double> omega;              // cumulative band masses, last one is the total
};
CondenserMeasure condenser_measure(const Quadrature& quad, const CondenserBasis& cb);

class SzegoS {
 public:
  // p given by its zeros (monic, degree <= g, off Delta); empty means p = 1.
  SzegoS(const Quadrature& quad, const GapBasis& gb, std::function<double(double)> mu_dot,
         std::vector<cplx> p_zeros = {});
  cplx operator()(cplx z, Side side = Side::none) const;
  const std::vector<double>& constants() const { return c_; }

 private:
  cplx p_of(cplx z) const;

  const Quadrature* quad_;
  std::function<double(double)> mu_dot_;
  std::vector<cplx> p_zeros_;
  std::vector<double> c_;
  std::vector<std::vector<cplx>> band_nodes_;  // log mu_dot * p * dens at band nodes
  std::vector<std::vector<cplx>> gap_nodes_;   // p * dens at gap nodes
};

class CondenserD {
 public:
  CondenserD(const Quadrature& quad, const CondenserBasis& cb, DensityProfile lambda);
  cplx operator()(cplx z, Side side = Side::none) const;
  double G() const { return G_; }
  const std::vector<double>& kappa() const { return kappa_; }

 private:
  // int_Delta K(z; x) log(lambda / G) u / (w_+ w~) dx
  cplx band_part(cplx z, Side side) const;
  cplx gap_part(int i, cplx z, Side side) const;

  const Quadrature* quad_;
  const CondenserBasis* cb_;
  DensityProfile lambda_;
  double G_ = 1.0, logG_ = 0.0;
  std::vector<double> kappa_;
  std::vector<Panel> panels_;                 // one per band, graded where zeros are declared
  std::vector<std::vector<cplx>> band_vals_;  // log(lambda/G) u dens / w~ per node, 0 where skipped
  std::vector<std::vector<bool>> band_ok_;
  std::vector<std::vector<cplx>> gap_vals_;   // u dens / w~ per gap node
};

}  // namespace mpade
