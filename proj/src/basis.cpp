#include "mpade/basis.hpp"

#include <cmath>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

double condition_number(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& A, const char* what, double* cond_out = nullptr) {
  const double cond = condition_number(A);
  if (cond_out) *cond_out = cond;
  if (!std::isfinite(cond) || cond > 1e12) {
    std::ostringstream os;
    os << what << " is ill-conditioned (condition number " << cond << ")";
    throw NumericalError("basis", os.str());
  }
  return A.fullPivLu().inverse();
}

RealPoly symmetrize(const RealPoly& p, int g) {
  std::vector<double> c(2 * g + 1, 0.0);
  for (int k = 0; k <= 2 * g; ++k) c[k] = 0.5 * (p[k] + p[2 * g - k]);
  return RealPoly(std::move(c));
}

// Joukowski-basis construction for a system containing 0: ell_j with no l = 0 term.
std::vector<RealPoly> direct_ell(const Quadrature& quad, Eigen::MatrixXd& W) {
  const int g = quad.system().genus;
  W.resize(g, g);
  std::vector<RealPoly> terms;
  for (int l = 1; l <= g; ++l) {
    std::vector<double> c(g + 1, 0.0);
    c[l] = 1.0;
    terms.push_back(from_joukowski_basis(c, g));
  }
  for (int i = 0; i < g; ++i)
    for (int l = 0; l < g; ++l) W(i, l) = gap_integral_ww(quad, i, terms[l]);
  const Eigen::MatrixXd Winv = checked_inverse(W, "gap matrix of the condenser basis");
  std::vector<RealPoly> ell;
  for (int j = 0; j < g; ++j) {
    RealPoly p;
    for (int l = 0; l < g; ++l) p = p + terms[l] * Winv(l, j);
    ell.push_back(p);
  }
  return ell;
}

}  // namespace

double gap_integral_ww(const Quadrature& quad, int k, const RealPoly& p) {
  const IntervalSystem& sys = quad.system();
  return quad.gap_integral(k, [&](double x) { return p(x) / wt_of(sys, x).real(); });
}

cplx band_integral_ww(const Quadrature& quad, const RealPoly& p) {
  const IntervalSystem& sys = quad.system();
  return cplx(0.0, quad.band_integral_imag([&](double x) { return p(x) / wt_of(sys, x).real(); }));
}

std::vector<std::vector<double>> zeros_per_gap(const IntervalSystem& sys, const RealPoly& p) {
  std::vector<std::vector<double>> out;
  for (int i = 0; i < sys.genus; ++i) out.push_back(real_zeros_in(p, sys.gap_lo(i), sys.gap_hi(i), 2000));
  return out;
}

GapBasis gap_basis(const Quadrature& quad) {
  const int g = quad.system().genus;
  GapBasis gb;
  gb.V.resize(g, g);
  if (g == 0) return gb;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      gb.V(i, j) = quad.gap_integral(i, [j](double x) { return std::pow(x, j); });
  const Eigen::MatrixXd Vinv = checked_inverse(gb.V, "gap moment matrix", &gb.condition);
  for (int i = 0; i < g; ++i) {
    std::vector<double> c(g);
    for (int j = 0; j < g; ++j) c[j] = Vinv(j, i);
    gb.l.emplace_back(std::move(c));
  }
  return gb;
}

PeriodMatrix period_matrix(const Quadrature& quad, const GapBasis& gb) {
  const int g = quad.system().genus;
  PeriodMatrix pm;
  pm.B = Eigen::MatrixXcd::Zero(g, g);
  for (int j = 0; j < g; ++j) {
    const RealPoly& lj = gb.l[j];
    cplx acc(0.0, 0.0);
    for (int k = 0; k < g; ++k) {
      acc += quad.band_integral(k, [&](double x) { return cplx(lj(x), 0.0); }, Side::plus);
      pm.B(k, j) = -acc;
    }
  }
  return pm;
}

RealPoly m_infinity(const Quadrature& quad, const GapBasis& gb) {
  const int g = quad.system().genus;
  RealPoly m = RealPoly::monomial(g, -1.0);
  for (int i = 0; i < g; ++i) {
    const double c = quad.gap_integral(i, [g](double y) { return std::pow(y, g); });
    m = m + gb.l[i] * c;
  }
  return m;
}

ComplexPoly m_point(const Quadrature& quad, const GapBasis& gb, cplx e) {
  const IntervalSystem& sys = quad.system();
  if (e.imag() == 0.0 && e.real() >= sys.lo() && e.real() <= sys.hi()) {
    std::ostringstream os;
    os.precision(17);
    os << "m_e requires e off the hull of Delta, got e = " << e.real();
    throw ValidationError(os.str());
  }
  const int g = sys.genus;
  const cplx ce = w_of(sys, e);
  ComplexPoly sum;
  for (int i = 0; i < g; ++i) {
    const cplx Gi = quad.gap_integral_c(i, [e](double y) { return 1.0 / (cplx(y, 0.0) - e); });
    sum = sum + to_complex(gb.l[i]) * Gi;
  }
  const ComplexPoly lin(std::vector<cplx>{-e, cplx(1.0, 0.0)});
  return (ComplexPoly::constant(1.0) - lin * sum) * ce;
}

CondenserBasis condenser_basis(const Quadrature& quad, std::optional<double> pivot) {
  const IntervalSystem& sys = quad.system();
  if (!sys.unit_disk) throw ValidationError("condenser basis requires Delta inside (-1, 1)");
  const int g = sys.genus;
  CondenserBasis cb;
  if (g == 0) {
    const RealPoly one = RealPoly::constant(1.0);
    const cplx I = band_integral_ww(quad, one);
    cb.u0 = (cplx(0.0, -1.0) / I).real();
    cb.u = one * cb.u0;
    return cb;
  }
  bool zero_in_delta = false;
  for (int k = 0; k < sys.bands(); ++k)
    if (sys.a(k) <= 0.0 && 0.0 <= sys.b(k)) zero_in_delta = true;

  std::vector<RealPoly> ell;
  if (zero_in_delta && !pivot) {
    ell = direct_ell(quad, cb.W);
  } else {
    double x0 = 0.0;
    if (pivot) {
      x0 = *pivot;
    } else {
      int widest = 0;
      for (int k = 1; k < sys.bands(); ++k)
        if (sys.b(k) - sys.a(k) > sys.b(widest) - sys.a(widest)) widest = k;
      x0 = 0.5 * (sys.a(widest) + sys.b(widest));
    }
    cb.transported = true;
    cb.pivot = x0;
    std::vector<double> img;
    for (double e : sys.endpoints) img.push_back(mobius(x0, e).value.real());
    const Quadrature tq(make_system(img), quad.order());
    Eigen::MatrixXd Wt;
    const std::vector<RealPoly> ell_t = direct_ell(tq, Wt);
    const RealPoly N(std::vector<double>{-x0, 1.0});
    const RealPoly D(std::vector<double>{1.0, -x0});
    std::vector<RealPoly> pulled;
    for (const RealPoly& lt : ell_t) {
      const std::vector<double> c = to_joukowski_basis(symmetrize(lt, g), g);
      RealPoly p;
      for (int l = 0; l <= g; ++l) {
        RealPoly term = RealPoly::constant(c[l]);
        for (int k = 0; k < g - l; ++k) term = term * N * D;
        for (int k = 0; k < l; ++k) term = term * (N * N + D * D);
        p = p + term;
      }
      pulled.push_back(symmetrize(p, g));
    }
    Eigen::MatrixXd M(g, g);
    for (int k = 0; k < g; ++k)
      for (int j = 0; j < g; ++j) M(k, j) = gap_integral_ww(quad, k, pulled[j]);
    const Eigen::MatrixXd Minv = checked_inverse(M, "transported gap matrix");
    for (int j = 0; j < g; ++j) {
      RealPoly p;
      for (int i = 0; i < g; ++i) p = p + pulled[i] * Minv(i, j);
      ell.push_back(symmetrize(p, g));
    }
    cb.W = M;
  }

  RealPoly U = RealPoly::monomial(g, 1.0);
  for (int i = 0; i < g; ++i) U = U - ell[i] * gap_integral_ww(quad, i, RealPoly::monomial(g, 1.0));
  const cplx I = band_integral_ww(quad, U);
  const double u0 = (cplx(0.0, -1.0) / I).real();
  cb.u = symmetrize(U * u0, g);
  const double cu = to_joukowski_basis(cb.u, g)[0];
  cb.u0 = cu;
  for (RealPoly& p : ell) {
    const double c0 = to_joukowski_basis(p, g)[0];
    if (c0 != 0.0) p = symmetrize(p - cb.u * (c0 / cu), g);
  }
  cb.ell = std::move(ell);
  for (const auto& zs : zeros_per_gap(sys, cb.u)) cb.u_zeros.push_back(zs.empty() ? std::nan("") : zs.front());
  return cb;
}

}  // namespace mpade
