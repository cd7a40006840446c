#include "mpade/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;

cplx prod_minus(const std::vector<double>& zeros, cplx z) {
  cplx p(1.0, 0.0);
  for (double x : zeros) p *= z - x;
  return p;
}

void check_poles(const std::vector<double>& zeros, cplx z) {
  for (double x : zeros)
    if (std::abs(z - x) < 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "evaluation point " << z << " is within 1e-12 of the pole " << x;
      throw NumericalError("approx", os.str());
    }
}

}  // namespace

double Density::rho(double x) const {
  double p = mu_dot(x);
  for (double s : m_zeros) p *= x - s;
  return p;
}

// ---------------------------------------------------------------- Markov function

MarkovFunction::MarkovFunction(const Quadrature& quad, Density density) : quad_(&quad), density_(std::move(density)) {
  const IntervalSystem& sys = quad.system();
  if (static_cast<int>(density_.m_zeros.size()) != sys.genus) {
    std::ostringstream os;
    os << "m must have one zero per gap: expected " << sys.genus << ", got " << density_.m_zeros.size();
    throw ValidationError(os.str());
  }
  for (int i = 0; i < sys.genus; ++i) {
    const double s = density_.m_zeros[i];
    if (!(s > sys.gap_lo(i) && s < sys.gap_hi(i))) {
      std::ostringstream os;
      os << "zero " << i << " of m lies outside gap " << i;
      throw ValidationError(os.str());
    }
  }
  for (const Panel& p : quad.bands()) {
    const double mid = p.c;
    if (!(density_.rho(mid) * p.density(mid) > 0.0)) {
      std::ostringstream os;
      os << "the measure is not positive on band " << p.index;
      throw ValidationError(os.str());
    }
    std::vector<double> rd(p.x.size());
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      rd[j] = density_.rho(p.x[j]) * p.dens[j];
      if (!std::isfinite(rd[j]) || rd[j] < 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "density is not positive and finite at x = " << p.x[j];
        throw ValidationError(os.str());
      }
      x_.push_back(p.x[j]);
      mu_.push_back(p.weight[j] * rd[j] / kPi);
      mass_ += mu_.back();
    }
    panel_rho_dens_.push_back(std::move(rd));
  }
}

cplx MarkovFunction::operator()(cplx z, Side side) const {
  const auto& bands = quad_->bands();
  cplx s(0.0, 0.0);
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const Panel& p = bands[k];
    std::vector<cplx> vals(panel_rho_dens_[k].begin(), panel_rho_dens_[k].end());
    const ComplexFn F = [&](double x) { return cplx(density_.rho(x) * p.density(x), 0.0); };
    s += panel_cauchy(p, F, z, side, &vals);
  }
  return -s / kPi;
}

cplx MarkovFunction::cauchy(const ComplexFn& h, cplx z, Side side) const {
  cplx s(0.0, 0.0);
  for (const Panel& p : quad_->bands()) {
    const ComplexFn F = [&](double x) { return h(x) * density_.rho(x) * p.density(x); };
    s += panel_cauchy(p, F, z, side);
  }
  return -s / kPi;
}

// ---------------------------------------------------------------- orthogonal polynomials

cplx WeightPoly::operator()(cplx z) const {
  cplx p(1.0, 0.0);
  for (cplx r : roots) p *= z - r;
  for (double x : reflected) {
    const cplx f = 1.0 - z * x;
    p *= f * f;
  }
  return p;
}

OrthoResult ortho_q(const MarkovFunction& mf, const WeightPoly& v, int n) {
  if (n < 0) throw ValidationError("ortho_q needs n >= 0");
  OrthoResult out;
  if (n == 0) return out;
  const auto& x = mf.nodes();
  const auto& mu = mf.weights();
  const int N = static_cast<int>(x.size());
  if (n >= N) throw ValidationError("degree exceeds the number of quadrature nodes");
  Eigen::VectorXd sw(N), X(N);
  for (int j = 0; j < N; ++j) {
    const double vv = v.abs_at(x[j]);
    if (!(vv > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "weight polynomial vanishes on Delta at x = " << x[j];
      throw ValidationError(os.str());
    }
    sw(j) = std::sqrt(mu[j] / vv);
    X(j) = x[j];
  }
  std::vector<Eigen::VectorXd> Q;
  Q.push_back(sw / sw.norm());
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd p = X.cwiseProduct(Q[k]);
    const double a = Q[k].dot(p);
    out.alpha.push_back(a);
    if (k + 1 == n) break;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qv : Q) p -= qv.dot(p) * qv;
    const double b = p.norm();
    if (!(b > 0.0)) throw NumericalError("approx", "Stieltjes procedure broke down");
    out.beta.push_back(b);
    Q.push_back(p / b);
  }
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = out.alpha[k];
  for (int k = 0; k + 1 < n; ++k) sub(k) = out.beta[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  // Polish each eigenvalue by bisection on the three-term recurrence.
  const auto monic = [&](double t) {
    double p0 = 1.0, p1 = t - out.alpha[0];
    for (int k = 1; k < n; ++k) {
      const double p2 = (t - out.alpha[k]) * p1 - out.beta[k - 1] * out.beta[k - 1] * p0;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  for (int k = 0; k < n; ++k) {
    double lam = es.eigenvalues()(k);
    double lo = lam - 1e-12, hi = lam + 1e-12;
    double flo = monic(lo), fhi = monic(hi);
    if (flo * fhi < 0.0) {
      for (int it = 0; it < 60 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = monic(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      lam = 0.5 * (lo + hi);
    }
    out.zeros.push_back(lam);
  }
  std::sort(out.zeros.begin(), out.zeros.end());
  out.max_residual = ortho_residual(mf, v, out.zeros);
  return out;
}

double ortho_residual(const MarkovFunction& mf, const WeightPoly& v, const std::vector<double>& zeros) {
  const auto& x = mf.nodes();
  const auto& mu = mf.weights();
  const int n = static_cast<int>(zeros.size());
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    double num = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t = std::pow(x[j], m) * prod_minus(zeros, x[j]).real() * mu[j] / v.abs_at(x[j]);
      num += t;
      scale += std::abs(t);
    }
    worst = std::max(worst, std::abs(num) / scale);
  }
  return worst;
}

// ---------------------------------------------------------------- Pade

cplx RationalApproximant::q(cplx z) const { return prod_minus(q_zeros, z); }

cplx RationalApproximant::q_tilde(cplx z) const {
  cplx p(1.0, 0.0);
  for (double x : q_zeros) p *= 1.0 - z * x;
  return p;
}

RationalApproximant pade(const MarkovFunction& mf, const InterpolationScheme& scheme) {
  scheme.validate(mf.quad().system());
  RationalApproximant r;
  r.n = scheme.n;
  r.scheme = scheme;
  for (const auto& p : scheme.points)
    if (!p.infinite)
      for (int k = 0; k < p.mult; ++k) r.v.roots.push_back(p.z);
  const OrthoResult o = ortho_q(mf, r.v, r.n);
  r.q_zeros = o.zeros;
  r.ortho_residual = o.max_residual;
  return r;
}

cplx pade_error(const MarkovFunction& mf, const RationalApproximant& r, cplx z, Side side) {
  check_poles(r.q_zeros, z);
  const cplx q = r.q(z);
  const cplx I = mf.cauchy(
      [&](double x) {
        const double qx = prod_minus(r.q_zeros, x).real();
        return cplx(qx * qx, 0.0) / r.v(cplx(x, 0.0)).real();
      },
      z, side);
  return r.v(z) / (q * q) * I;
}

cplx pade_error_route2(const MarkovFunction& mf, const RationalApproximant& r, cplx z, Side side) {
  check_poles(r.q_zeros, z);
  const cplx I = mf.cauchy(
      [&](double x) { return prod_minus(r.q_zeros, x) / r.v(cplx(x, 0.0)).real(); }, z, side);
  return r.v(z) / r.q(z) * I;
}

double consistency_residual(const MarkovFunction& mf, const RationalApproximant& r, const std::vector<cplx>& probes,
                            double radius) {
  const auto P = [&](cplx z) {
    const cplx R = mf.cauchy([&](double x) { return prod_minus(r.q_zeros, x) / r.v(cplx(x, 0.0)).real(); }, z);
    return r.q(z) * mf(z) - r.v(z) * R;
  };
  const int n = r.n;
  std::vector<cplx> t, Pt;
  double scale = 0.0;
  for (int k = 0; k < n; ++k) {
    t.push_back(std::polar(radius, 2.0 * kPi * (k + 0.5) / n));
    Pt.push_back(P(t.back()));
    scale = std::max(scale, std::abs(Pt.back()));
  }
  double worst = 0.0;
  for (cplx z : probes) {
    cplx L(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      cplx basis(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) basis *= (z - t[j]) / (t[k] - t[j]);
      L += Pt[k] * basis;
    }
    const cplx Pz = P(z);
    const double ref = n == 0 ? std::abs(mf(z)) : scale;
    worst = std::max(worst, std::abs(Pz - L) / ref);
  }
  return worst;
}

// ---------------------------------------------------------------- critical points

RationalApproximant critical_point(const MarkovFunction& mf, int n, const CriticalOptions& opt) {
  const IntervalSystem& sys = mf.quad().system();
  if (!sys.unit_disk) throw ValidationError("critical points need Delta inside (-1, 1)");
  if (n < 1) throw ValidationError("critical points need n >= 1");
  std::vector<double> x = opt.init ? *opt.init : ortho_q(mf, WeightPoly{}, n).zeros;
  if (static_cast<int>(x.size()) != n) throw ValidationError("initial zero set must have n entries");
  std::sort(x.begin(), x.end());
  RationalApproximant r;
  r.n = n;
  double alpha = opt.alpha, prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  int it = 0;
  double disp = 0.0;
  for (; it < opt.max_iter; ++it) {
    const std::vector<double> y = ortho_q(mf, WeightPoly{{}, x}, n).zeros;
    disp = 0.0;
    for (int k = 0; k < n; ++k) disp = std::max(disp, std::abs(y[k] - x[k]));
    if (r.trajectory.size() < 64) r.trajectory.push_back(x);
    if (disp < opt.tol) {
      x = y;
      converged = true;
      break;
    }
    if (disp > prev) alpha = std::max(alpha * 0.5, 1.0 / 64.0);
    prev = disp;
    for (int k = 0; k < n; ++k) x[k] = (1.0 - alpha) * x[k] + alpha * y[k];
  }
  r.iterations = it + 1;
  r.displacement = disp;
  if (!converged) {
    std::ostringstream os;
    os << "critical-point iteration did not converge for n = " << n << " after " << opt.max_iter
       << " steps (last displacement " << disp << ")";
    throw NumericalError("approx", os.str());
  }
  r.q_zeros = x;
  r.v = WeightPoly{{}, x};
  r.scheme = InterpolationScheme::reflected_squares(x);
  double k = 1.0;
  for (double xj : x)
    if (xj != 0.0) k /= xj * xj;
  r.kappa = k;
  r.ortho_residual = ortho_residual(mf, r.v, x);
  return r;
}

std::vector<RationalApproximant> critical_points(const MarkovFunction& mf, int n, int restarts,
                                                const CriticalOptions& opt) {
  std::vector<RationalApproximant> found{critical_point(mf, n, opt)};
  const IntervalSystem& sys = mf.quad().system();
  double total = 0.0;
  for (int k = 0; k < sys.bands(); ++k) total += sys.b(k) - sys.a(k);
  for (int r = 1; r <= restarts; ++r) {
    // n points spread over the bands by length, shifted per restart
    CriticalOptions o = opt;
    std::vector<double> x;
    for (int j = 0; j < n; ++j) {
      double t = total * (j + static_cast<double>(r) / (restarts + 1)) / n;
      int k = 0;
      while (k < sys.genus && t > sys.b(k) - sys.a(k)) t -= sys.b(k) - sys.a(k), ++k;
      x.push_back(sys.a(k) + t);
    }
    o.init = x;
    RationalApproximant c;
    try {
      c = critical_point(mf, n, o);
    } catch (const NumericalError&) {
      continue;
    }
    bool fresh = true;
    for (const auto& f : found) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d = std::max(d, std::abs(f.q_zeros[j] - c.q_zeros[j]));
      fresh = fresh && d > 1e-8;
    }
    if (fresh) found.push_back(std::move(c));
  }
  return found;
}

cplx optimal_error(const MarkovFunction& mf, const std::vector<double>& q_zeros, cplx z) {
  check_poles(q_zeros, z);
  cplx qt(1.0, 0.0);
  for (double x : q_zeros) qt *= 1.0 - z * x;
  const cplx I = mf.cauchy(
      [&](double x) {
        double t = 1.0;
        for (double xj : q_zeros) t *= 1.0 - x * xj;
        return prod_minus(q_zeros, x) / t;
      },
      z);
  return qt / prod_minus(q_zeros, z) * I;
}

namespace {

void guard_circle(const std::vector<double>& zeros) {
  for (double x : zeros)
    if (std::abs(std::abs(x) - 1.0) < 1e-6) throw NumericalError("approx", "pole within 1e-6 of the unit circle");
}

}  // namespace

double l2_error(const MarkovFunction& mf, const RationalApproximant& r, int circle_nodes) {
  if (!mf.quad().system().unit_disk) throw ValidationError("L2(T) error needs Delta inside (-1, 1)");
  guard_circle(r.q_zeros);
  return std::sqrt(circle_mean([&](cplx z) { return pade_error(mf, r, z); }, circle_nodes));
}

double l2_error_optimal(const MarkovFunction& mf, const std::vector<double>& q_zeros, int circle_nodes) {
  guard_circle(q_zeros);
  return std::sqrt(circle_mean([&](cplx z) { return optimal_error(mf, q_zeros, z); }, circle_nodes));
}

// ---------------------------------------------------------------- bases

Bases::Bases(const std::vector<double>& endpoints, Density dens, int order)
    : quad(std::make_unique<Quadrature>(make_system(endpoints), order)), density(std::move(dens)) {
  const IntervalSystem& sys = quad->system();
  if (!density.mu_dot) throw ValidationError("density is missing mu_dot");
  f = std::make_unique<MarkovFunction>(*quad, density);
  gb = gap_basis(*quad);
  pm = period_matrix(*quad, gb);
  m_inf = m_infinity(*quad, gb);
  surface = std::make_unique<Surface>(*quad, gb, pm);
  ctx = surface->context(density.m_zeros);
  if (sys.unit_disk) {
    cb = condenser_basis(*quad);
    rho_c = rho(*quad, *cb);
  }
  S = std::make_unique<SzegoS>(*quad, gb, density.mu_dot);
}

cplx DivisorData::blaschke(cplx z) const {
  cplx p(1.0, 0.0);
  for (double x : top) p *= (z - x) / (1.0 - x * z);
  return p;
}

DivisorData divisor_data(const Bases& b, const RationalApproximant& r) {
  const IntervalSystem& sys = b.system();
  const int g = sys.genus;
  DivisorData dd;
  const InterpolationScheme scheme = InterpolationScheme::reflected_squares(r.q_zeros);
  const Psi psi(*b.quad, b.gb, scheme);
  dd.omega = psi.omega();
  dd.Vn = b.ctx.V;
  for (int i = 0; i < g; ++i) dd.Vn(i) += b.S->constants()[i] + dd.omega[i];
  std::vector<double> proj;
  std::vector<EndpointZero> zeros;
  if (g > 0) {
    dd.divisor = solve_jip(*b.surface, dd.Vn, b.ctx.s_angles);
    for (int i = 0; i < g; ++i) {
      const SurfacePoint& P = dd.divisor.points[i];
      double x = P.z.real();
      if (P.sheet == Sheet::ramification) {
        x = std::abs(x - sys.gap_lo(i)) < std::abs(x - sys.gap_hi(i)) ? sys.gap_lo(i) : sys.gap_hi(i);
        zeros.push_back({x, -1.0});
      }
      if (P.sheet == Sheet::top) dd.top.push_back(x);
      proj.push_back(x);
    }
  }
  dd.m_n = RealPoly::from_roots(proj);
  dd.d_n = static_cast<int>(dd.top.size());
  const Density dens = b.density;
  const RealPoly mn = dd.m_n;
  const std::vector<double> top = dd.top;
  dd.lambda.eval = [dens, mn, top](double x) {
    double B = 1.0;
    for (double t : top) B *= (x - t) / (1.0 - t * x);
    return dens.rho(x) * B * B / mn(x);
  };
  dd.lambda.zeros = zeros;
  return dd;
}

}  // namespace mpade
