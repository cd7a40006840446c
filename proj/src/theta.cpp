#include "mpade/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Composite Gauss-Legendre on [0, 1] for the tail of a(infinity) in t = 1 / (s - b).
constexpr int kTailPanels = 6;

}  // namespace

SurfacePoint SurfacePoint::involution() const {
  SurfacePoint p = *this;
  if (sheet == Sheet::top)
    p.sheet = Sheet::bottom;
  else if (sheet == Sheet::bottom)
    p.sheet = Sheet::top;
  return p;
}

// ---------------------------------------------------------------- theta series

int theta_radius(const Eigen::MatrixXcd& B) {
  const int g = static_cast<int>(B.rows());
  if (g == 0) return 0;
  const Eigen::MatrixXd Y = B.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Y + Y.transpose()));
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) throw NumericalError("theta", "Im B is not positive definite");
  const double r = std::sqrt(static_cast<double>(g)) / 2.0 + std::sqrt((37.0 + kPi * lmax * g / 4.0) / (kPi * lmin));
  return static_cast<int>(std::ceil(r));
}

cplx theta_eval(const Eigen::MatrixXcd& B, int R, const Eigen::VectorXcd& u) {
  const int g = static_cast<int>(B.rows());
  if (g == 0) return 1.0;
  const Eigen::MatrixXd Y = B.imag();
  // u = u_r + j + B m with Im u_r reduced against Im B and Re u_r in [-1/2, 1/2].
  const Eigen::VectorXd mr = Y.ldlt().solve(u.imag());
  Eigen::VectorXd m(g);
  for (int k = 0; k < g; ++k) m(k) = std::round(mr(k));
  Eigen::VectorXcd ur = u - B * m.cast<cplx>();
  for (int k = 0; k < g; ++k) ur(k) -= std::round(ur(k).real());
  const cplx mBm = (m.cast<cplx>().transpose() * B * m.cast<cplx>())(0, 0);
  const cplx mu = (m.cast<cplx>().transpose() * ur)(0, 0);
  const cplx factor = std::exp(-kPi * kI * mBm - 2.0 * kPi * kI * mu);

  std::vector<int> n(g, -R);
  cplx sum(0.0, 0.0);
  Eigen::VectorXcd nv(g);
  while (true) {
    for (int k = 0; k < g; ++k) nv(k) = static_cast<double>(n[k]);
    const cplx q = (nv.transpose() * B * nv)(0, 0);
    const cplx l = (nv.transpose() * ur)(0, 0);
    sum += std::exp(kPi * kI * q + 2.0 * kPi * kI * l);
    int k = 0;
    while (k < g && n[k] == R) n[k++] = -R;
    if (k == g) break;
    ++n[k];
  }
  return factor * sum;
}

cplx theta_eval(const ThetaContext& ctx, const Eigen::VectorXcd& u) { return theta_eval(ctx.B, ctx.R, u); }

// ---------------------------------------------------------------- Abel map

Surface::Surface(const Quadrature& quad, const GapBasis& gb, const PeriodMatrix& pm)
    : quad_(&quad), gb_(&gb), B_(pm.B) {
  const IntervalSystem& sys = quad.system();
  const int g = sys.genus;
  for (double e : sys.endpoints) singular_.emplace_back(e, 0.0);
  K_std_ = Eigen::VectorXcd::Zero(g);
  K_gap_ = Eigen::VectorXcd::Zero(g);
  if (g == 0) return;
  R_ = theta_radius(B_);
  for (int i = 0; i < g; ++i) abel_b_.push_back(abel(cplx(sys.gap_lo(i), 0.0), Side::plus));
  std::vector<double> p1, p2;
  for (int i = 0; i < g; ++i) {
    p1.push_back(1.3 * kPi + 0.05 * i);
    p2.push_back(0.35 * kPi + 0.07 * i);
  }
  probes_ = {p1, p2};
  // Surface grid for the vanishing test: both sheets over two rings about the hull.
  const double mid = 0.5 * (sys.lo() + sys.hi()), half = 0.5 * (sys.hi() - sys.lo());
  for (double scale : {0.6, 1.4})
    for (int k = 0; k < 12; ++k) {
      const cplx z = mid + half * scale * std::polar(1.0, 2.0 * kPi * (k + 0.5) / 12.0);
      const Eigen::VectorXcd a = abel(z);
      grid_.push_back(a);
      grid_.push_back(-a);
    }
  find_riemann_constants();
}

Eigen::VectorXcd Surface::abel(cplx z, Side side) const {
  const IntervalSystem& sys = quad_->system();
  const int g = sys.genus;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g);
  if (g == 0) return out;
  const Path path = path_from_right_end(sys, z, side);
  for (int j = 0; j < g; ++j) {
    const RealPoly& lj = gb_->l[j];
    out(j) = integrate_path(path, [&](cplx s) { return lj(s) / (2.0 * w_of(sys, s)); }, singular_);
  }
  return out;
}

Eigen::VectorXcd Surface::abel_infinity() const {
  const IntervalSystem& sys = quad_->system();
  const int g = sys.genus;
  const double b = sys.hi();
  Eigen::VectorXcd out = abel(cplx(b + 1.0, 0.0));
  const QuadratureRule gl = gauss_legendre(20);
  for (int p = 0; p < kTailPanels; ++p) {
    const double t0 = static_cast<double>(p) / kTailPanels, t1 = static_cast<double>(p + 1) / kTailPanels;
    const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
    for (int k = 0; k < 20; ++k) {
      const double t = c + h * gl.nodes[k];
      const double s = b + 1.0 / t;
      const double w = w_of(sys, s).real();
      for (int j = 0; j < g; ++j) out(j) += h * gl.weights[k] * gb_->l[j](s) / (2.0 * w) / (t * t);
    }
  }
  return out;
}

Eigen::VectorXcd Surface::abel(const SurfacePoint& P) const {
  Eigen::VectorXcd a = P.infinite ? abel_infinity() : abel(P.z, P.side);
  if (P.sheet == Sheet::bottom) a = -a;
  return a;
}

double Surface::cycle_x(int i, double angle) const {
  const IntervalSystem& sys = quad_->system();
  const double c = 0.5 * (sys.gap_lo(i) + sys.gap_hi(i)), r = 0.5 * (sys.gap_hi(i) - sys.gap_lo(i));
  return c - r * std::cos(angle);
}

double Surface::cycle_angle(int i, double x, Sheet sheet) const {
  const IntervalSystem& sys = quad_->system();
  const double c = 0.5 * (sys.gap_lo(i) + sys.gap_hi(i)), r = 0.5 * (sys.gap_hi(i) - sys.gap_lo(i));
  const double t = std::acos(std::clamp((c - x) / r, -1.0, 1.0));
  return sheet == Sheet::bottom ? 2.0 * kPi - t : t;
}

Eigen::VectorXd Surface::cycle_rate(int i, double angle) const {
  const Panel& p = quad_->gaps()[i];
  const double x = cycle_x(i, angle);
  const int g = genus();
  Eigen::VectorXd v(g);
  const double den = 2.0 * p.sign * p.others_root(x);
  for (int j = 0; j < g; ++j) v(j) = gb_->l[j](x) / den;
  return v;
}

Eigen::VectorXd Surface::cycle_abel(int i, double angle) const {
  const int g = genus();
  const double turns = std::floor(angle / (2.0 * kPi));
  const double t = angle - 2.0 * kPi * turns;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g);
  out(i) += turns;
  if (t <= 0.0) return out;
  const QuadratureRule gl = gauss_legendre(20);
  const int panels = std::max(1, static_cast<int>(std::ceil(t / (kPi / 8.0))));
  const double h = t / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * h;
    for (int k = 0; k < 20; ++k) out += 0.5 * h * gl.weights[k] * cycle_rate(i, c + 0.5 * h * gl.nodes[k]);
  }
  return out;
}

SurfacePoint Surface::cycle_point(int i, double angle) const {
  const IntervalSystem& sys = quad_->system();
  SurfacePoint P;
  const double t = angle - 2.0 * kPi * std::floor(angle / (2.0 * kPi));
  const double x = cycle_x(i, t);
  P.z = cplx(x, 0.0);
  if (std::abs(x - sys.gap_lo(i)) < 1e-9 || std::abs(x - sys.gap_hi(i)) < 1e-9)
    P.sheet = Sheet::ramification;
  else
    P.sheet = t < kPi ? Sheet::top : Sheet::bottom;
  P.side = Side::plus;
  return P;
}

Eigen::VectorXcd Surface::abel_cycle(int i, double angle) const {
  return abel_b_[i] + cycle_abel(i, angle).cast<cplx>();
}

double Surface::vanishing_ratio(const Eigen::VectorXcd& K, const std::vector<double>& angles) const {
  const int g = genus();
  Eigen::VectorXcd aD = Eigen::VectorXcd::Zero(g);
  for (int i = 0; i < g; ++i) aD += abel_cycle(i, angles[i]);
  const std::vector<Eigen::VectorXcd>* grid = &grid_;
  double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
  for (const auto& a : *grid) {
    const double v = std::abs(theta_eval(B_, R_, a - aD - K));
    gmax = std::max(gmax, v);
    gmin = std::min(gmin, v);
  }
  double at = 0.0;
  for (int i = 0; i < g; ++i) at = std::max(at, std::abs(theta_eval(B_, R_, abel_cycle(i, angles[i]) - aD - K)));
  if (gmax == 0.0) return std::numeric_limits<double>::infinity();
  // A zero elsewhere on the grid disqualifies the candidate.
  if (gmin < 1e-6 * gmax) return std::numeric_limits<double>::infinity();
  return at / gmax;
}

void Surface::find_riemann_constants() {
  const int g = genus();
  std::vector<Eigen::VectorXcd> passing;
  std::ostringstream report;
  for (int mask = 0; mask < (1 << (2 * g)); ++mask) {
    Eigen::VectorXcd j(g), m(g);
    for (int k = 0; k < g; ++k) {
      j(k) = static_cast<double>((mask >> k) & 1);
      m(k) = static_cast<double>((mask >> (g + k)) & 1);
    }
    const Eigen::VectorXcd K = 0.5 * (j + B_ * m);
    double worst = 0.0;
    for (const auto& probe : probes_) worst = std::max(worst, vanishing_ratio(K, probe));
    report << " " << worst;
    if (worst < 1e-8) passing.push_back(K);
  }
  if (passing.size() != 1) {
    std::ostringstream os;
    os << passing.size() << " half-period candidates pass the vanishing test; ratios:" << report.str();
    throw NumericalError("theta", os.str());
  }
  K_std_ = passing.front();
  K_gap_ = K_std_;
  for (const auto& ab : abel_b_) K_gap_ += ab;
}

ThetaContext Surface::context(const std::vector<double>& s) const {
  const int g = genus();
  ThetaContext ctx;
  ctx.B = B_;
  ctx.R = R_;
  ctx.K_std = K_std_;
  ctx.K_gap = K_gap_;
  ctx.V = Eigen::VectorXd::Zero(g);
  if (static_cast<int>(s.size()) != g) throw ValidationError("need one divisor point per gap");
  for (int i = 0; i < g; ++i) {
    const IntervalSystem& sys = quad_->system();
    if (!(s[i] > sys.gap_lo(i) && s[i] < sys.gap_hi(i))) {
      std::ostringstream os;
      os << "divisor point " << i << " is not inside gap " << i;
      throw ValidationError(os.str());
    }
    const double ang = cycle_angle(i, s[i], Sheet::bottom);
    ctx.s_angles.push_back(ang);
    ctx.V += cycle_abel(i, ang);
  }
  return ctx;
}

// ---------------------------------------------------------------- Jacobi inversion

namespace {

double wrap_angle(double t) { return t - 2.0 * kPi * std::floor(t / (2.0 * kPi)); }

Eigen::VectorXd reduced_residual(const Surface& S, const std::vector<double>& ang, const Eigen::VectorXd& rhs) {
  Eigen::VectorXd F = -rhs;
  for (int i = 0; i < S.genus(); ++i) F += S.cycle_abel(i, ang[i]);
  for (int k = 0; k < F.size(); ++k) F(k) -= std::round(F(k));
  return F;
}

bool newton(const Surface& S, std::vector<double>& ang, const Eigen::VectorXd& rhs, double step_cap, int max_iter) {
  const int g = S.genus();
  Eigen::VectorXd r = reduced_residual(S, ang, rhs);
  for (int it = 0; it < max_iter; ++it) {
    if (r.cwiseAbs().maxCoeff() < 1e-13) return true;
    Eigen::MatrixXd J(g, g);
    for (int i = 0; i < g; ++i) J.col(i) = S.cycle_rate(i, ang[i]);
    Eigen::VectorXd d = -J.fullPivLu().solve(r);
    const double dn = d.cwiseAbs().maxCoeff();
    if (!std::isfinite(dn)) return false;
    if (dn > step_cap) d *= step_cap / dn;
    double lam = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      std::vector<double> trial = ang;
      for (int i = 0; i < g; ++i) trial[i] = wrap_angle(ang[i] + lam * d(i));
      const Eigen::VectorXd rt = reduced_residual(S, trial, rhs);
      if (rt.norm() < r.norm()) {
        ang = trial;
        r = rt;
        improved = true;
        break;
      }
      lam *= 0.5;
    }
    if (!improved) return r.cwiseAbs().maxCoeff() < 1e-12;
  }
  return r.cwiseAbs().maxCoeff() < 1e-12;
}

// Gauss-Seidel sweep; the diagonal map angle -> A^(i)_i is monotone on [0, 2 pi].
void sweep(const Surface& S, std::vector<double>& ang, const Eigen::VectorXd& rhs) {
  const int g = S.genus();
  for (int i = 0; i < g; ++i) {
    double others = rhs(i);
    for (int k = 0; k < g; ++k)
      if (k != i) others -= S.cycle_abel(k, ang[k])(i);
    const double target = others - std::floor(others);
    const double sgn = S.cycle_abel(i, 2.0 * kPi)(i) > 0.0 ? 1.0 : -1.0;
    const double goal = sgn > 0.0 ? target : target - 1.0;
    double lo = 0.0, hi = 2.0 * kPi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = S.cycle_abel(i, mid)(i);
      if ((v < goal) == (sgn > 0.0))
        lo = mid;
      else
        hi = mid;
    }
    ang[i] = 0.5 * (lo + hi);
  }
}

}  // namespace

Divisor solve_jip(const Surface& S, const Eigen::VectorXd& rhs, const std::vector<double>& init_angles) {
  const int g = S.genus();
  Divisor D;
  if (g == 0) return D;
  if (static_cast<int>(init_angles.size()) != g) throw ValidationError("solve_jip needs g initial angles");
  std::vector<double> ang = init_angles;
  bool ok = newton(S, ang, rhs, kPi / 2.0, 40);
  D.method = "newton";
  if (!ok) {
    ang = init_angles;
    ok = newton(S, ang, rhs, 0.1, 400);
    D.method = "damped";
  }
  if (!ok) {
    ang = init_angles;
    for (int s = 0; s < 200; ++s) {
      sweep(S, ang, rhs);
      if (reduced_residual(S, ang, rhs).cwiseAbs().maxCoeff() < 1e-6) break;
    }
    ok = newton(S, ang, rhs, 0.1, 100);
    D.method = "sweep";
  }
  D.residual = reduced_residual(S, ang, rhs).cwiseAbs().maxCoeff();
  if (!ok && D.residual > 1e-10) {
    std::ostringstream os;
    os << "Jacobi inversion failed after fallbacks, residual " << D.residual;
    throw NumericalError("theta", os.str());
  }
  D.gap_angles = ang;
  for (int i = 0; i < g; ++i) D.points.push_back(S.cycle_point(i, ang[i]));
  for (int i = 0; i < g; ++i)
    for (int k = i + 1; k < g; ++k)
      if (std::abs(ang[i] - (2.0 * kPi - ang[k])) < 1e-6 && std::abs(D.points[i].z - D.points[k].z) < 1e-6)
        D.near_involution = true;
  return D;
}

// ---------------------------------------------------------------- Theta_n, T_n

ThetaQuotient::ThetaQuotient(const Surface& S, const ThetaContext& ctx, Eigen::VectorXd Vn)
    : S_(&S), ctx_(&ctx), Vn_(std::move(Vn)) {}

cplx ThetaQuotient::Theta(const SurfacePoint& P) const {
  if (S_->genus() == 0) return 1.0;
  const Eigen::VectorXcd a = S_->abel(P);
  const Eigen::VectorXcd K = ctx_->K_gap;
  const cplx num = theta_eval(*ctx_, a - Vn_.cast<cplx>() - K);
  const cplx den = theta_eval(*ctx_, a - ctx_->V.cast<cplx>() - K);
  if (den == cplx(0.0, 0.0)) return std::numeric_limits<double>::infinity();
  return num / den;
}

cplx ThetaQuotient::T(cplx z, Side side) const {
  if (S_->genus() == 0) return 1.0;
  const Eigen::VectorXcd a = S_->abel(z, side);
  const Eigen::VectorXcd K = ctx_->K_gap;
  const Eigen::VectorXcd V = ctx_->V.cast<cplx>(), Vn = Vn_.cast<cplx>();
  const cplx n1 = theta_eval(*ctx_, a + Vn + K), d1 = theta_eval(*ctx_, a + V + K);
  const cplx n2 = theta_eval(*ctx_, a - V - K), d2 = theta_eval(*ctx_, a - Vn - K);
  if (d1 == cplx(0.0, 0.0) || d2 == cplx(0.0, 0.0)) return std::numeric_limits<double>::infinity();
  return (n1 / d1) * (n2 / d2);
}

// ---------------------------------------------------------------- S_q

SzegoPoly::SzegoPoly(const Surface& S, cplx e) : S_(&S) {
  const IntervalSystem& sys = S.system();
  if (S.genus() == 0) throw ValidationError("S_q through theta functions requires g >= 1");
  if (e.imag() == 0.0 && e.real() >= sys.lo() && e.real() <= sys.hi() &&
      (sys.band_of(e.real()) >= 0 || sys.is_endpoint(e.real())))
    throw ValidationError("polynomial for S_q has a zero on Delta");
  roots_.push_back(e);
  if (e.imag() != 0.0) roots_.push_back(std::conj(e));
  a_inf_ = S.abel_infinity();
  const cplx a1(sys.lo(), 0.0);
  for (cplx r : roots_) {
    // Points on the alpha-cycles use the upper trace.
    const Eigen::VectorXcd ar = S.abel(r, r.imag() == 0.0 ? Side::plus : Side::none);
    abel_roots_.push_back(ar);
    // S(a_0)^2 = q(a_0) by continuity of S_+ S_- = q at the endpoint.
    norm_.push_back(std::sqrt(a1 - r) / S_e(r, ar, a1, Side::none));
  }
}

cplx SzegoPoly::S_e(cplx, const Eigen::VectorXcd& ae, cplx z, Side side) const {
  if (S_->genus() == 0) return 1.0;
  const Eigen::VectorXcd a = S_->abel(z, side);
  const Eigen::MatrixXcd& B = S_->B();
  const int R = S_->R();
  const Eigen::VectorXcd& K = S_->K_std();
  // theta(a - a(e*) - K) / theta(a - a(infinity*) - K), with a(P*) = -a(P)
  return theta_eval(B, R, a + ae - K) / theta_eval(B, R, a + a_inf_ - K);
}

cplx SzegoPoly::operator()(cplx z, Side side) const {
  cplx v(1.0, 0.0);
  for (std::size_t k = 0; k < roots_.size(); ++k) v *= norm_[k] * S_e(roots_[k], abel_roots_[k], z, side);
  return v;
}

}  // namespace mpade
