#pragma once

#include <complex>
#include <vector>

#include "mpade/polynomial.hpp"

namespace mpade {

enum class Side { none, plus, minus };

inline Side flip(Side s) {
  return s == Side::plus ? Side::minus : (s == Side::minus ? Side::plus : Side::none);
}

struct BranchValue {
  cplx value{0.0, 0.0};
  bool on_cut = false;
  Side side = Side::none;
};

// g+1 disjoint bands [a_k, b_k], k = 0..g (zero-based throughout the code).
struct IntervalSystem {
  std::vector<double> endpoints;
  int genus = 0;
  bool unit_disk = false;

  int bands() const { return genus + 1; }
  double a(int k) const { return endpoints[2 * k]; }
  double b(int k) const { return endpoints[2 * k + 1]; }
  double lo() const { return endpoints.front(); }
  double hi() const { return endpoints.back(); }
  // Gap i is (b_i, a_{i+1}), i = 0..g-1.
  double gap_lo(int i) const { return b(i); }
  double gap_hi(int i) const { return a(i + 1); }

  // Index of the band whose open interior holds x, or -1.
  int band_of(double x) const;
  // Index of the gap whose open interior holds x, or -1.
  int gap_of(double x) const;
  bool is_endpoint(double x, double tol = 0.0) const;
  // Sign s_k with -i w_+(x) = s_k |w(x)| on band k.
  double band_sign(int k) const { return ((genus - k) % 2 == 0) ? 1.0 : -1.0; }
  // Sign of the real value w(x) in gap i.
  double gap_sign(int i) const { return ((genus - i) % 2 == 0) ? 1.0 : -1.0; }
};

IntervalSystem make_system(const std::vector<double>& endpoints);

// w(z) = sqrt(prod (z - e)), ~ z^{g+1} at infinity. On a band a side is required.
BranchValue eval_w(const IntervalSystem& sys, cplx z, Side side = Side::none);

// w~(z) = z^{g+1} w(1/z), w~(0) = 1. On the reflected bands a side is required.
BranchValue eval_w_tilde(const IntervalSystem& sys, cplx z, Side side = Side::none);

// Shorthands that throw when a side is missing on a cut.
cplx w_of(const IntervalSystem& sys, cplx z, Side side = Side::none);
cplx wt_of(const IntervalSystem& sys, cplx z, Side side = Side::none);

struct MobiusValue {
  cplx value{0.0, 0.0};
  bool infinite = false;
};

// t(z) = (z - x0) / (1 - z x0) and its inverse.
MobiusValue mobius(double x0, cplx z);
MobiusValue mobius_inv(double x0, cplx z);

}  // namespace mpade
