#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mpade/polynomial.hpp"
#include "mpade/quad.hpp"

namespace mpade {

// l_i, i = 0..g-1, with int over gap k of l_i / w = delta_ki.
struct GapBasis {
  std::vector<RealPoly> l;
  Eigen::MatrixXd V;  // V(i, j) = int over gap i of x^j / w
  double condition = 1.0;
};

struct PeriodMatrix {
  Eigen::MatrixXcd B;
};

// ell_j symmetric of degree 2g with int over gap k of ell_j / (w w~) = delta_kj and
// no x^g (x + 1/x)^0 component; u with zero gap integrals and int_Delta u / (w_+ w~) = -i.
struct CondenserBasis {
  std::vector<RealPoly> ell;
  RealPoly u;
  double u0 = 0.0;
  std::vector<double> u_zeros;  // one per gap
  Eigen::MatrixXd W;            // gap integrals used for the final normalization
  bool transported = false;
  double pivot = 0.0;
};

GapBasis gap_basis(const Quadrature& quad);
PeriodMatrix period_matrix(const Quadrature& quad, const GapBasis& gb);
RealPoly m_infinity(const Quadrature& quad, const GapBasis& gb);
// m_e for finite e off the hull of Delta; complex coefficients when e is complex.
ComplexPoly m_point(const Quadrature& quad, const GapBasis& gb, cplx e);

// Builds the condenser basis; transports through a Mobius map when 0 is not in Delta
// (or whenever a pivot is forced).
CondenserBasis condenser_basis(const Quadrature& quad, std::optional<double> pivot = std::nullopt);

// int over gap k of p / (w w~)
double gap_integral_ww(const Quadrature& quad, int k, const RealPoly& p);
// int_Delta p / (w_+ w~), purely imaginary for real p
cplx band_integral_ww(const Quadrature& quad, const RealPoly& p);

// Zeros of a real polynomial in each gap (sign changes on the gap).
std::vector<std::vector<double>> zeros_per_gap(const IntervalSystem& sys, const RealPoly& p);

}  // namespace mpade
