#include "mpade/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace mpade {

ComplexPoly to_complex(const RealPoly& p) {
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  return ComplexPoly(std::move(c));
}

double max_imag(const ComplexPoly& p) {
  double m = 0.0;
  for (const auto& v : p.coeffs()) m = std::max(m, std::abs(v.imag()));
  return m;
}

RealPoly real_part(const ComplexPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(v.real());
  return RealPoly(std::move(c));
}

std::vector<double> real_zeros_in(const RealPoly& p, double lo, double hi, int samples) {
  std::vector<double> zeros;
  if (p.degree() < 1) return zeros;
  double x0 = lo, f0 = p(lo);
  for (int s = 1; s <= samples; ++s) {
    const double x1 = lo + (hi - lo) * s / samples;
    const double f1 = p(x1);
    if (f0 == 0.0) {
      if (s > 1) zeros.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double l = x0, r = x1, fl = f0;
      for (int it = 0; it < 200 && r - l > 1e-16 * std::max(1.0, std::abs(l)); ++it) {
        const double m = 0.5 * (l + r);
        const double fm = p(m);
        if (fm == 0.0) {
          l = r = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      zeros.push_back(0.5 * (l + r));
    }
    x0 = x1;
    f0 = f1;
  }
  return zeros;
}

namespace {

// Coefficients of x^g (x + 1/x)^l as a polynomial of degree g + l.
RealPoly joukowski_term(int l, int g) {
  std::vector<double> c(g + l + 1, 0.0);
  double binom = 1.0;
  for (int m = 0; m <= l; ++m) {
    c[g + l - 2 * m] += binom;
    binom = binom * (l - m) / (m + 1);
  }
  return RealPoly(std::move(c));
}

}  // namespace

std::vector<double> to_joukowski_basis(const RealPoly& p, int g) {
  std::vector<double> out(g + 1, 0.0);
  RealPoly rest = p;
  for (int l = g; l >= 0; --l) {
    const double lead = rest[g + l];
    out[l] = lead;
    rest = rest - joukowski_term(l, g) * lead;
  }
  return out;
}

RealPoly from_joukowski_basis(const std::vector<double>& c, int g) {
  RealPoly p;
  for (int l = 0; l <= g && l < static_cast<int>(c.size()); ++l) p = p + joukowski_term(l, g) * c[l];
  return p;
}

}  // namespace mpade
