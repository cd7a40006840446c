#pragma once

#include <complex>
#include <vector>

namespace mpade {

using cplx = std::complex<double>;

// Dense polynomial, ascending monomial coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(int k, T v = T(1)) {
    std::vector<T> c(k + 1, T(0));
    c[k] = v;
    return Polynomial(std::move(c));
  }
  template <class Range>
  static Polynomial from_roots(const Range& roots) {
    Polynomial p = constant(T(1));
    for (const auto& r : roots) p = p * Polynomial(std::vector<T>{T(-r), T(1)});
    return p;
  }

  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }

  template <class U>
  auto operator()(U x) const {
    using R = decltype(T() * x);
    R acc = R(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() < 2) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(static_cast<double>(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial& operator*=(T s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  friend Polynomial operator*(Polynomial p, T s) { return p *= s; }
  friend Polynomial operator*(T s, Polynomial p) { return p *= s; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * T(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using RealPoly = Polynomial<double>;
using ComplexPoly = Polynomial<cplx>;

ComplexPoly to_complex(const RealPoly& p);

// Largest |Im| over the coefficients.
double max_imag(const ComplexPoly& p);
RealPoly real_part(const ComplexPoly& p);

// Sign changes of p on a uniform sample of [lo, hi], each refined by bisection.
std::vector<double> real_zeros_in(const RealPoly& p, double lo, double hi, int samples = 400);

// Palindromic polynomial of degree 2g  <->  coefficients of x^g (x + 1/x)^l, l = 0..g.
std::vector<double> to_joukowski_basis(const RealPoly& p, int g);
RealPoly from_joukowski_basis(const std::vector<double>& c, int g);

}  // namespace mpade
