#include "mpade/scalarmaps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

bool in_open(double x, double lo, double hi) { return x > lo && x < hi; }

void require_side_off_hull(const IntervalSystem& sys, cplx z, Side side, const char* what) {
  if (z.imag() != 0.0 || side != Side::none) return;
  const double x = z.real();
  if (sys.is_endpoint(x)) return;
  bool cut = in_open(x, sys.lo(), sys.hi());
  if (!cut && x != 0.0) cut = in_open(1.0 / x, sys.lo(), sys.hi()) && !sys.is_endpoint(1.0 / x);
  if (cut) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at x = " << x << " lies on a cut and requires a side";
    throw ValidationError(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- schemes

InterpolationScheme InterpolationScheme::at_infinity(int n) {
  InterpolationScheme s;
  s.n = n;
  if (n > 0) s.points.push_back({cplx(0.0, 0.0), true, 2 * n});
  return s;
}

InterpolationScheme InterpolationScheme::reflected_squares(const std::vector<double>& x) {
  InterpolationScheme s;
  s.n = static_cast<int>(x.size());
  int inf = 0;
  for (double xj : x) {
    if (xj == 0.0)
      inf += 2;
    else
      s.points.push_back({cplx(1.0 / xj, 0.0), false, 2});
  }
  if (inf > 0) s.points.push_back({cplx(0.0, 0.0), true, inf});
  return s;
}

int InterpolationScheme::total() const {
  int t = 0;
  for (const auto& p : points) t += p.mult;
  return t;
}

int InterpolationScheme::infinite_count() const {
  int t = 0;
  for (const auto& p : points)
    if (p.infinite) t += p.mult;
  return t;
}

void InterpolationScheme::validate(const IntervalSystem& sys, double margin) const {
  if (n < 0) throw ValidationError("scheme degree n must be non-negative");
  if (total() != 2 * n) {
    std::ostringstream os;
    os << "scheme must hold 2n = " << 2 * n << " points with multiplicity, got " << total();
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.mult < 1) throw ValidationError("scheme point " + std::to_string(i) + " has multiplicity < 1");
    if (p.infinite) continue;
    if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()))
      throw ValidationError("scheme point " + std::to_string(i) + " is not finite");
    const double xr = std::clamp(p.z.real(), sys.lo(), sys.hi());
    if (std::abs(p.z - xr) < margin) {
      std::ostringstream os;
      os << "scheme point " << i << " lies within " << margin << " of the hull of Delta";
      throw ValidationError(os.str());
    }
    if (p.z.imag() != 0.0) {
      int conj_mult = 0;
      for (const auto& q : points)
        if (!q.infinite && std::abs(q.z - std::conj(p.z)) <= 1e-14 * std::max(1.0, std::abs(p.z)))
          conj_mult += q.mult;
      if (conj_mult != p.mult) {
        std::ostringstream os;
        os << "scheme point " << i << " has no conjugate partner of equal multiplicity";
        throw ValidationError(os.str());
      }
    }
  }
}

// ---------------------------------------------------------------- psi_n

Psi::Psi(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme) : quad_(&quad) {
  const IntervalSystem& sys = quad.system();
  for (const auto& p : scheme.points) {
    if (p.infinite) {
      k_inf_ += p.mult;
      continue;
    }
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.e == p.z; });
    if (it != terms_.end()) {
      it->mult += p.mult;
      continue;
    }
    Term t;
    t.e = p.z;
    t.mult = p.mult;
    t.m = m_point(quad, gb, p.z);
    t.dm = t.m.derivative();
    t.ddm = t.dm.derivative();
    terms_.push_back(std::move(t));
  }
  if (k_inf_ > 0) m_inf_ = m_infinity(quad, gb);
  for (double e : sys.endpoints) singular_.emplace_back(e, 0.0);
}

cplx Psi::integrand(cplx s) const {
  const IntervalSystem& sys = quad_->system();
  const cplx w = w_of(sys, s);
  cplx total(0.0, 0.0);
  for (const Term& t : terms_) {
    const cplx d = s - t.e;
    cplx reg;
    if (std::abs(d) < 1e-4 * std::max(1.0, std::abs(t.e))) {
      // (m/w - 1)/(s - e) by its Taylor expansion at e; m/w = 1 at e.
      cplx L1(0.0, 0.0), L2(0.0, 0.0);
      for (double e : sys.endpoints) {
        L1 += 0.5 / (t.e - e);
        L2 -= 0.5 / ((t.e - e) * (t.e - e));
      }
      const cplx we = w_of(sys, t.e);
      const cplx m = t.m(t.e), dm = t.dm(t.e), ddm = t.ddm(t.e);
      const cplx f1 = (dm - m * L1) / we;
      const cplx f2 = (ddm - 2.0 * dm * L1 + m * (L1 * L1 - L2)) / we;
      reg = f1 + 0.5 * f2 * d;
    } else {
      reg = t.m(s) / (d * w) - 1.0 / d;
    }
    total += static_cast<double>(t.mult) * reg;
  }
  if (k_inf_ > 0) total += static_cast<double>(k_inf_) * m_inf_(s) / w;
  return total;
}

cplx Psi::operator()(cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  const double b = sys.hi();
  if (z == cplx(b, 0.0)) return 1.0;
  if (z.imag() == 0.0 && side == Side::none && z.real() >= sys.lo() && z.real() < b &&
      !sys.is_endpoint(z.real())) {
    std::ostringstream os;
    os.precision(17);
    os << "psi_n at x = " << z.real() << " lies on the hull of Delta and requires a side";
    throw ValidationError(os.str());
  }
  cplx prefactor(1.0, 0.0);
  for (const Term& t : terms_) {
    const cplx ratio = (z - t.e) / (b - t.e);
    if (ratio == cplx(0.0, 0.0)) return 0.0;
    prefactor *= std::pow(ratio, t.mult);
  }
  const Path path = path_from_right_end(sys, z, side);
  const cplx I = integrate_path(path, [this](cplx s) { return integrand(s); }, singular_);
  return prefactor * std::exp(I);
}

std::vector<cplx> Psi::omega_raw() const {
  const IntervalSystem& sys = quad_->system();
  std::vector<cplx> out;
  cplx acc(0.0, 0.0);
  for (int k = 0; k < sys.genus; ++k) {
    acc += quad_->band_integral(
        k,
        [this](double x) {
          cplx F(0.0, 0.0);
          for (const Term& t : terms_) F += static_cast<double>(t.mult) * t.m(x) / (x - t.e);
          if (k_inf_ > 0) F += static_cast<double>(k_inf_) * m_inf_(x);
          return F;
        },
        Side::plus);
    out.push_back(-acc / (2.0 * kPi * kI));
  }
  return out;
}

std::vector<double> Psi::omega() const {
  std::vector<double> out;
  for (cplx v : omega_raw()) out.push_back(fractional_part(v));
  return out;
}

cplx psi_n(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme, cplx z, Side side) {
  return Psi(quad, gb, scheme)(z, side);
}

std::vector<double> omega_n(const Quadrature& quad, const GapBasis& gb, const InterpolationScheme& scheme) {
  return Psi(quad, gb, scheme).omega();
}

double fractional_part(cplx v) {
  if (std::abs(v.imag()) > 1e-9) {
    std::ostringstream os;
    os << "expected a real constant, imaginary part " << v.imag();
    throw NumericalError("scalarmaps", os.str());
  }
  const double x = v.real();
  double f = x - std::floor(x);
  if (f > 1.0 - 1e-12) f = 0.0;
  return f;
}

// ---------------------------------------------------------------- condenser map

cplx phi_map(const Quadrature& quad, const CondenserBasis& cb, cplx z, Side side) {
  const IntervalSystem& sys = quad.system();
  if (!sys.unit_disk) throw ValidationError("phi requires Delta inside (-1, 1)");
  require_side_off_hull(sys, z, side, "phi");
  std::vector<cplx> singular;
  for (double e : sys.endpoints) {
    singular.emplace_back(e, 0.0);
    if (e != 0.0) singular.emplace_back(1.0 / e, 0.0);
  }
  const Path path = path_from_one(sys, z, side);
  const cplx I = integrate_path(
      path,
      [&](cplx s) { return cb.u(s) / (w_of(sys, s) * wt_of(sys, s)); },
      singular);
  return std::exp(kPi * I);
}

double rho(const Quadrature& quad, const CondenserBasis& cb) {
  return phi_map(quad, cb, cplx(quad.system().hi(), 0.0)).real();
}

CondenserMeasure condenser_measure(const Quadrature& quad, const CondenserBasis& cb) {
  const IntervalSystem sys = quad.system();
  CondenserMeasure m;
  const RealPoly u = cb.u;
  m.density = [sys, u](double x) {
    return std::abs(u(x)) / (std::abs(w_of(sys, x, Side::plus)) * wt_of(sys, x).real());
  };
  double acc = 0.0;
  for (int k = 0; k < sys.bands(); ++k) {
    const cplx v = quad.band_integral(k, [&](double x) { return cplx(u(x) / wt_of(sys, x).real(), 0.0); });
    acc += (kI * v).real();
    m.omega.push_back(acc);
  }
  return m;
}

// ---------------------------------------------------------------- S

SzegoS::SzegoS(const Quadrature& quad, const GapBasis& gb, std::function<double(double)> mu_dot_in,
               std::vector<cplx> p_zeros)
    : quad_(&quad), mu_dot_(std::move(mu_dot_in)), p_zeros_(std::move(p_zeros)) {
  const IntervalSystem& sys = quad.system();
  if (static_cast<int>(p_zeros_.size()) > sys.genus)
    throw ValidationError("Szego polynomial p must have degree <= g");
  for (cplx zj : p_zeros_) {
    if (zj.imag() == 0.0 && (sys.band_of(zj.real()) >= 0 || sys.is_endpoint(zj.real())))
      throw ValidationError("Szego polynomial p has a zero on Delta");
  }
  for (const Panel& p : quad.bands()) {
    std::vector<cplx> v(p.x.size());
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      const double m = mu_dot_(p.x[j]);
      if (!(m > 0.0) || !std::isfinite(m)) {
        std::ostringstream os;
        os.precision(17);
        os << "density must be positive on Delta; mu_dot(" << p.x[j] << ") = " << m;
        throw ValidationError(os.str());
      }
      v[j] = std::log(m) * p_of(p.x[j]) * p.dens[j];
    }
    band_nodes_.push_back(std::move(v));
  }
  for (const Panel& p : quad.gaps()) {
    std::vector<cplx> v(p.x.size());
    for (std::size_t j = 0; j < p.x.size(); ++j) v[j] = p_of(p.x[j]) * p.dens[j];
    gap_nodes_.push_back(std::move(v));
  }
  for (int i = 0; i < sys.genus; ++i) {
    const RealPoly& li = gb.l[i];
    double s = 0.0;
    for (const Panel& p : quad.bands())
      for (std::size_t j = 0; j < p.x.size(); ++j) s += p.weight[j] * std::log(mu_dot_(p.x[j])) * li(p.x[j]) * p.dens[j];
    c_.push_back(-s / (2.0 * kPi));
  }
}

cplx SzegoS::p_of(cplx z) const {
  cplx p(1.0, 0.0);
  for (cplx zj : p_zeros_) p *= z - zj;
  return p;
}

cplx SzegoS::operator()(cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  const auto& bands = quad_->bands();
  cplx I1(0.0, 0.0);
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const Panel& p = bands[k];
    const ComplexFn F = [&](double x) { return std::log(mu_dot_(x)) * p_of(x) * p.density(x); };
    I1 += panel_cauchy(p, F, z, side, &band_nodes_[k]);
  }
  I1 *= -kI;
  cplx I2(0.0, 0.0);
  const auto& gaps = quad_->gaps();
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const Panel& p = gaps[i];
    const ComplexFn F = [&](double x) { return p_of(x) * p.density(x); };
    I2 += 2.0 * kPi * kI * c_[i] * panel_cauchy(p, F, z, side, &gap_nodes_[i]);
  }
  const cplx w = w_of(sys, z, side);
  return std::exp(w / (2.0 * kPi * kI * p_of(z)) * (I1 - I2));
}

// ---------------------------------------------------------------- D

CondenserD::CondenserD(const Quadrature& quad, const CondenserBasis& cb, DensityProfile lambda)
    : quad_(&quad), cb_(&cb), lambda_(std::move(lambda)) {
  const IntervalSystem& sys = quad.system();
  if (!sys.unit_disk) throw ValidationError("D requires Delta inside (-1, 1)");
  const RealPoly& u = cb.u;
  const auto wt = [&sys](double x) { return wt_of(sys, x).real(); };
  const double logG = quad.log_endpoint_integral(lambda_.eval, lambda_.zeros,
                                                 [&](double x) { return std::abs(u(x)) / wt(x); });
  G_ = std::exp(logG);
  logG_ = logG;
  for (int k = 0; k < sys.bands(); ++k) {
    bool zlo = false, zhi = false;
    for (const auto& z : lambda_.zeros) {
      if (std::abs(z.e - sys.a(k)) < 1e-14) zlo = true;
      if (std::abs(z.e - sys.b(k)) < 1e-14) zhi = true;
    }
    Panel p = (zlo || zhi) ? quad.graded_band(k, zlo, zhi) : quad.bands()[k];
    std::vector<cplx> v(p.x.size());
    std::vector<bool> ok(p.x.size());
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      const double x = p.x[j];
      const double val = (std::log(lambda_.eval(x)) - logG) * u(x) * p.dens[j] / wt(x);
      ok[j] = std::isfinite(val);
      v[j] = ok[j] ? val : 0.0;
    }
    panels_.push_back(std::move(p));
    band_vals_.push_back(std::move(v));
    band_ok_.push_back(std::move(ok));
  }
  for (const Panel& p : quad.gaps()) {
    std::vector<cplx> v(p.x.size());
    for (std::size_t j = 0; j < p.x.size(); ++j) v[j] = u(p.x[j]) * p.dens[j] / wt(p.x[j]);
    gap_vals_.push_back(std::move(v));
  }
  for (int i = 0; i < sys.genus; ++i) {
    const RealPoly& li = cb.ell[i];
    double s = 0.0;
    for (std::size_t k = 0; k < panels_.size(); ++k) {
      const Panel& p = panels_[k];
      for (std::size_t j = 0; j < p.x.size(); ++j) {
        if (!band_ok_[k][j]) continue;
        const double x = p.x[j];
        s += p.weight[j] * (std::log(lambda_.eval(x)) - logG) * li(x) * p.dens[j] / wt(x);
      }
    }
    // (1/2 pi i) * (-i) * s
    kappa_.push_back(-s / (2.0 * kPi));
  }
}

namespace {

// int_0^pi F(x) K(z; x) dtheta over one panel, node values supplied.
cplx kernel_sum(const Panel& p, const ComplexFn& F, const std::vector<cplx>& vals, cplx z, Side side) {
  cplx s = panel_cauchy(p, F, z, side, &vals);
  if (std::abs(z) < 1.0) {
    for (std::size_t j = 0; j < p.x.size(); ++j) s += p.weight[j] * vals[j] * p.x[j] / (1.0 - p.x[j] * z);
  } else {
    // x / (1 - x z) = -(1/z) (1 + zeta / (x - zeta)), zeta = 1/z.
    const cplx zeta = 1.0 / z;
    cplx plain(0.0, 0.0);
    for (std::size_t j = 0; j < p.x.size(); ++j) plain += p.weight[j] * vals[j];
    s += -(1.0 / z) * (plain + zeta * panel_cauchy(p, F, zeta, flip(side), &vals));
  }
  return s;
}

}  // namespace

cplx CondenserD::band_part(cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  const RealPoly& u = cb_->u;
  cplx s(0.0, 0.0);
  for (std::size_t k = 0; k < panels_.size(); ++k) {
    const Panel& p = panels_[k];
    const ComplexFn F = [&](double x) {
      return cplx((std::log(lambda_.eval(x)) - logG_) * u(x) * p.density(x) / wt_of(sys, x).real(), 0.0);
    };
    s += kernel_sum(p, F, band_vals_[k], z, side);
  }
  return -kI * s;
}

cplx CondenserD::gap_part(int i, cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  const RealPoly& u = cb_->u;
  const Panel& p = quad_->gaps()[i];
  const ComplexFn F = [&](double x) { return cplx(u(x) * p.density(x) / wt_of(sys, x).real(), 0.0); };
  return kernel_sum(p, F, gap_vals_[i], z, side);
}

cplx CondenserD::operator()(cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  require_side_off_hull(sys, z, side, "D");
  cplx bracket = band_part(z, side);
  for (int i = 0; i < sys.genus; ++i) bracket -= 2.0 * kPi * kI * kappa_[i] * gap_part(i, z, side);
  const cplx pre = w_of(sys, z, side) * wt_of(sys, z, side) / (2.0 * kPi * kI * cb_->u(z));
  return std::exp(pre * bracket);
}

}  // namespace mpade
