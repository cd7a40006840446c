#include "mpade/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mpade/harness.hpp"
#include "mpade/single_interval.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> band_points(const IntervalSystem& sys, int per_band) {
  std::vector<double> out;
  for (int k = 0; k <= sys.genus; ++k)
    for (int j = 0; j < per_band; ++j) out.push_back(sys.a(k) + (sys.b(k) - sys.a(k)) * (j + 0.5) / per_band);
  return out;
}

std::vector<cplx> circle_points(int n) {
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2.0 * kPi * (k + 0.5) / n));
  return out;
}

// total argument increment around |z| = 1 in turns
double winding(const std::function<cplx(cplx)>& F, int n) {
  const auto pts = circle_points(n);
  double s = 0.0;
  cplx prev = F(pts.back());
  for (cplx z : pts) {
    const cplx cur = F(z);
    s += std::arg(cur / prev);
    prev = cur;
  }
  return s / (2.0 * kPi);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

const std::vector<cplx> kOff = {{0.0, 2.0}, {1.5, 0.0}, {-2.0, 0.0}, {0.0, 0.9}, {0.1, 0.3}, {-1.0, 0.5}, {3.0, 0.0},
                                {0.7, 0.0}};

InterpolationScheme mixed_scheme(int n) {
  InterpolationScheme s;
  s.n = n;
  s.points = {{{1.5, 0.7}, false, 1}, {{1.5, -0.7}, false, 1}, {{-2.0, 0.0}, false, 2}};
  if (2 * n > 4) s.points.push_back({{0.0, 0.0}, true, 2 * n - 4});
  return s;
}

double exp_density(double x) { return std::exp(x); }

}  // namespace

bool CheckGroup::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void CheckGroup::expect_le(const std::string& nm, double value, double threshold) {
  checks.push_back({nm, value, threshold, value <= threshold});
}

void CheckGroup::expect(const std::string& nm, bool ok) { checks.push_back({nm, ok ? 0.0 : 1.0, 0.0, ok}); }

std::unique_ptr<Bases> cfg_a(int order) {
  return std::make_unique<Bases>(std::vector<double>{-0.7, -0.3, 0.2, 0.6}, Density{[](double) { return 1.0; }, {0.0}},
                                 order);
}

CheckGroup verify_orthogonality(const Bases& b, int max_n) {
  CheckGroup G{"orthogonality", {}};
  const Quadrature fine(b.system(), 2 * b.quad->order());
  const MarkovFunction f2(fine, b.density);
  double pade_res = 0.0, crit_res = 0.0, pade_res2 = 0.0, crit_res2 = 0.0;
  bool inside = true;
  // at most one zero per gap, so only the hull is guaranteed
  const auto in_delta = [&](const std::vector<double>& z) {
    for (double x : z) inside = inside && x > b.system().lo() && x < b.system().hi();
  };
  for (int n = 1; n <= max_n; ++n) {
    const RationalApproximant p = pade(*b.f, InterpolationScheme::at_infinity(n));
    pade_res = std::max(pade_res, p.ortho_residual);
    pade_res2 = std::max(pade_res2, ortho_residual(f2, p.v, p.q_zeros));
    in_delta(p.q_zeros);
    const RationalApproximant c = critical_point(*b.f, n);
    crit_res = std::max(crit_res, c.ortho_residual);
    crit_res2 = std::max(crit_res2, ortho_residual(f2, c.v, c.q_zeros));
    in_delta(c.q_zeros);
  }
  G.expect_le("pade residual", pade_res, 1e-9);
  G.expect_le("pade residual at doubled order", pade_res2, 1e-9);
  G.expect_le("critical residual", crit_res, 1e-9);
  G.expect_le("critical residual at doubled order", crit_res2, 1e-9);
  G.expect("zeros inside the hull of Delta", inside);
  return G;
}

CheckGroup verify_error_routes(const Bases& b, int max_n) {
  CheckGroup G{"error routes", {}};
  double worst = 0.0, cons = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const RationalApproximant r = pade(*b.f, InterpolationScheme::at_infinity(n));
    for (int k = 0; k < 16; ++k) {
      const cplx z = std::polar(2.0, 2.0 * kPi * (k + 0.25) / 16.0);
      worst = std::max(worst, rel(pade_error_route2(*b.f, r, z), pade_error(*b.f, r, z)));
    }
    cons = std::max(cons, consistency_residual(*b.f, r, {{0.3, 1.1}, {-1.5, 0.2}, {0.0, -3.0}}));
  }
  G.expect_le("route agreement on |z| = 2", worst, 1e-8);
  G.expect_le("q f - v R is a polynomial", cons, 1e-8);
  const RationalApproximant r0 = pade(*b.f, InterpolationScheme::at_infinity(0));
  G.expect_le("n = 0 error equals f", rel(pade_error(*b.f, r0, {0.0, 2.0}), (*b.f)({0.0, 2.0})), 1e-13);
  return G;
}

CheckGroup verify_scalar_maps(const Bases& b) {
  CheckGroup G{"scalar maps", {}};
  const IntervalSystem& sys = b.system();
  const auto xs = band_points(sys, 20);
  const Quadrature& q = *b.quad;

  // psi_n
  for (const auto& scheme : {InterpolationScheme::at_infinity(4), mixed_scheme(4)}) {
    const Psi psi(q, b.gb, scheme);
    double mx = 0.0, tr = 0.0;
    for (cplx z : kOff) mx = std::max(mx, std::abs(psi(z)));
    for (double x : xs)
      for (Side s : {Side::plus, Side::minus}) tr = std::max(tr, std::abs(std::abs(psi(x, s)) - 1.0));
    const std::string tag = scheme.infinite_count() == 8 ? " (E at infinity)" : " (mixed E)";
    G.expect_le("psi_n contraction" + tag, mx, 1.0 - 1e-6);
    G.expect_le("psi_n unimodular traces" + tag, tr, 1e-8);
  }

  // S
  const SzegoS S1(q, b.gb, exp_density), S2(q, b.gb, exp_density, {cplx(1.5, 0.0)}),
      S3(q, b.gb, exp_density, {cplx(-3.0, 0.0)});
  double pind = 0.0, smod = 0.0;
  for (cplx z : kOff) {
    const cplx s1 = S1(z);
    pind = std::max({pind, rel(S2(z) * S2(z), s1 * s1), rel(S3(z) * S3(z), s1 * s1)});
  }
  for (double x : xs)
    for (Side s : {Side::plus, Side::minus}) smod = std::max(smod, std::abs(std::norm(S1(x, s)) / std::exp(x) - 1.0));
  G.expect_le("S^2 independent of p", pind, 1e-9);
  G.expect_le("|S_+-|^2 = mu_dot", smod, 1e-8);

  // T_n
  {
    const Psi psi(q, b.gb, mixed_scheme(4));
    const auto om = psi.omega();
    Eigen::VectorXd Vn = b.ctx.V;
    for (int i = 0; i < sys.genus; ++i) Vn(i) += S1.constants()[i] + om[i];
    const ThetaQuotient TQ(*b.surface, b.ctx, Vn);
    double tmod = 0.0, jump = 0.0;
    for (double x : xs)
      for (Side s : {Side::plus, Side::minus}) tmod = std::max(tmod, std::abs(std::abs(TQ.T(x, s)) - 1.0));
    for (int i = 0; i < sys.genus; ++i)
      for (int j = 1; j <= 5; ++j) {
        const double x = sys.gap_lo(i) + (sys.gap_hi(i) - sys.gap_lo(i)) * j / 6.0;
        const cplx expect = std::exp(cplx(0.0, 4.0 * kPi * (Vn(i) - b.ctx.V(i))));
        jump = std::max(jump, std::abs(TQ.T(x, Side::plus) / TQ.T(x, Side::minus) - expect));
      }
    G.expect_le("|T_n+-| = 1", tmod, 1e-7);
    G.expect_le("T_n gap jumps", jump, 1e-7);
  }

  // phi and D
  if (b.cb) {
    const CondenserBasis& cb = *b.cb;
    double pc = 0.0, pd = 0.0;
    for (cplx t : circle_points(64)) pc = std::max(pc, std::abs(std::abs(phi_map(q, cb, t)) - 1.0));
    for (double x : xs)
      for (Side s : {Side::plus, Side::minus}) pd = std::max(pd, std::abs(std::abs(phi_map(q, cb, x, s)) / b.rho_c - 1.0));
    G.expect_le("|phi| = 1 on the circle", pc, 1e-8);
    G.expect_le("|phi+-| = rho on Delta", pd, 1e-8);
    G.expect_le("phi winds once", std::abs(winding([&](cplx z) { return phi_map(q, cb, z); }, 256) - 1.0), 1e-6);

    const CondenserD D(q, cb, DensityProfile{exp_density, {}});
    double dc = 0.0, dd = 0.0;
    for (cplx t : circle_points(64)) dc = std::max(dc, std::abs(std::abs(D(t)) - 1.0));
    for (double x : xs)
      for (Side s : {Side::plus, Side::minus}) dd = std::max(dd, std::abs(D.G() * std::norm(D(x, s)) / std::exp(x) - 1.0));
    G.expect_le("|D| = 1 on the circle", dc, 1e-6);
    G.expect_le("G |D+-|^2 = lambda", dd, 1e-6);
    G.expect_le("D winds zero times", std::abs(winding([&](cplx z) { return D(z); }, 256)), 1e-6);

    // lambda_n of a critical point, endpoint orders included
    const RationalApproximant r = critical_point(*b.f, 6);
    const DivisorData div = divisor_data(b, r);
    const CondenserD Dn(q, cb, div.lambda);
    double dn = 0.0, pos = 0.0;
    for (double x : xs) {
      pos = std::min(pos, div.lambda.eval(x));
      for (Side s : {Side::plus, Side::minus})
        dn = std::max(dn, std::abs(Dn.G() * std::norm(Dn(x, s)) / div.lambda.eval(x) - 1.0));
    }
    G.expect("lambda_n > 0 on the bands", pos >= 0.0);
    G.expect_le("G |D+-|^2 = lambda_n", dn, 1e-6);
  }
  return G;
}

namespace {

void theta_checks(CheckGroup& G, const Surface& S, const std::string& tag) {
  const Eigen::MatrixXcd& B = S.B();
  const int g = S.genus();
  G.expect_le("B symmetric" + tag, (B - B.transpose()).cwiseAbs().maxCoeff(), 1e-12 * B.cwiseAbs().maxCoeff());
  G.expect_le("B purely imaginary" + tag, B.real().cwiseAbs().maxCoeff(), 1e-10 * B.cwiseAbs().maxCoeff());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B.imag());
  G.expect("Im B positive definite" + tag, es.eigenvalues().minCoeff() > 0.0);

  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double even = 0.0, per = 0.0, trunc = 0.0;
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXcd u(g);
    for (int k = 0; k < g; ++k) u(k) = cplx(U(rng), 0.5 * U(rng));
    const cplx th = theta_eval(B, S.R(), u);
    even = std::max(even, std::abs(th - theta_eval(B, S.R(), -u)) / std::abs(th));
    for (int k = 0; k < g; ++k) {
      Eigen::VectorXcd v = u;
      v(k) += 1.0;
      per = std::max(per, std::abs(th - theta_eval(B, S.R(), v)) / std::abs(th));
    }
    trunc = std::max(trunc, std::abs(th - theta_eval(B, S.R() + 2, u)) / std::abs(th));
  }
  G.expect_le("theta even" + tag, even, 1e-12);
  G.expect_le("theta integer periods" + tag, per, 1e-12);
  G.expect_le("theta truncation R + 2" + tag, trunc, 1e-12);

  for (std::size_t p = 0; p < S.probes().size(); ++p)
    G.expect_le("K vanishing, probe " + std::to_string(p + 1) + tag, S.vanishing_ratio(S.K_std(), S.probes()[p]), 1e-8);
  std::vector<double> fresh;
  for (int i = 0; i < g; ++i) fresh.push_back((i % 2 ? 0.55 : 1.55) * kPi + 0.09 * i);
  G.expect_le("K vanishing, unseen probe" + tag, S.vanishing_ratio(S.K_std(), fresh), 1e-8);
}

void jip_check(CheckGroup& G, const Surface& S, const Eigen::VectorXd& rhs, const std::vector<double>& init,
               const std::string& tag) {
  const Divisor D = solve_jip(S, rhs, init);
  const IntervalSystem& sys = S.system();
  bool confined = true;
  for (int i = 0; i < S.genus(); ++i) {
    const double x = D.points[i].z.real();
    confined = confined && x >= sys.gap_lo(i) - 1e-12 && x <= sys.gap_hi(i) + 1e-12;
  }
  G.expect_le("JIP residual" + tag, D.residual, 1e-10);
  G.expect("JIP gap confinement" + tag, confined);
}

}  // namespace

CheckGroup verify_theta(const Bases& b) {
  CheckGroup G{"theta", {}};
  const Surface& S = *b.surface;
  theta_checks(G, S, " (g=1)");
  if (S.genus() == 1) {
    Eigen::VectorXcd d = S.K_std() - 0.5 * (Eigen::VectorXcd::Ones(1) + S.B().col(0));
    d(0) -= std::round(d(0).imag() / S.B()(0, 0).imag()) * S.B()(0, 0);
    d(0) -= std::round(d(0).real());
    G.expect_le("g=1 K = (1 + B)/2", std::abs(d(0)), 1e-10);
  }
  // identity solve: rhs = V returns the s-divisor
  {
    std::vector<double> init = b.ctx.s_angles;
    for (double& a : init) a += 0.3;
    const Divisor D = solve_jip(S, b.ctx.V, init);
    double dist = 0.0;
    for (int i = 0; i < S.genus(); ++i) dist = std::max(dist, std::abs(D.points[i].z.real() - b.density.m_zeros[i]));
    G.expect_le("JIP returns {s_i} for rhs = V", dist, 1e-8);
  }
  for (int n = 4; n <= 10; ++n) {
    const DivisorData dd = divisor_data(b, critical_point(*b.f, n));
    G.expect_le("JIP residual (critical n=" + std::to_string(n) + ")", dd.divisor.residual, 1e-10);
  }
  // genus two
  const std::vector<double> e2 = {-0.8, -0.5, -0.3, 0.0, 0.2, 0.7};
  const Bases b2(e2, Density{[](double) { return 1.0; }, {-0.4, 0.1}}, b.quad->order());
  theta_checks(G, *b2.surface, " (g=2)");
  for (int n = 3; n <= 6; ++n) {
    const Psi psi(*b2.quad, b2.gb, mixed_scheme(n));
    const auto om = psi.omega();
    Eigen::VectorXd Vn = b2.ctx.V;
    for (int i = 0; i < 2; ++i) Vn(i) += b2.S->constants()[i] + om[i];
    jip_check(G, *b2.surface, Vn, b2.ctx.s_angles, " (g=2, n=" + std::to_string(n) + ")");
  }
  return G;
}

CheckGroup verify_single_interval(int order) {
  CheckGroup G{"single interval", {}};
  const std::vector<cplx> pts = {{0.0, 2.0}, {1.5, 0.0}, {0.0, 0.9}, {0.7, 0.3}, {-0.8, -0.1}, {-1.2, 0.0}};
  for (const auto& [a, bb] : {std::pair{-0.5, 0.5}, std::pair{-0.3, 0.6}}) {
    const std::string tag = bb == 0.5 ? " [-0.5,0.5]" : " [-0.3,0.6]";
    const SingleInterval si(a, bb, exp_density);
    const Bases B({a, bb}, Density{exp_density, {}}, order);
    const Quadrature& q = *B.quad;
    const CondenserD D(q, *B.cb, DensityProfile{exp_density, {}});
    double ep = 0.0, es = 0.0, ef = 0.0, ed = 0.0;
    for (cplx z : pts) {
      for (const auto& scheme : {InterpolationScheme::at_infinity(3), mixed_scheme(3)})
        ep = std::max(ep, rel(psi_n(q, B.gb, scheme, z), si.psi_n(scheme, z)));
      es = std::max(es, rel((*B.S)(z), si.S(z)));
      ef = std::max(ef, rel(phi_map(q, *B.cb, z), si.phi(z)));
      ed = std::max(ed, rel(D(z), si.D(z)));
    }
    G.expect_le("psi_n" + tag, ep, 1e-8);
    G.expect_le("S" + tag, es, 1e-8);
    G.expect_le("phi" + tag, ef, 1e-8);
    G.expect_le("D" + tag, ed, 1e-8);
    G.expect_le("rho" + tag, std::abs(B.rho_c / si.rho() - 1.0), 1e-8);
    G.expect_le("G" + tag, std::abs(D.G() / si.G() - 1.0), 1e-8);
    const CondenserMeasure cm = condenser_measure(q, *B.cb);
    double om = 0.0;
    for (int j = 1; j < 20; ++j) {
      const double x = a + (bb - a) * j / 20.0;
      om = std::max(om, std::abs(cm.density(x) / si.omega_density(x) - 1.0));
    }
    G.expect_le("condenser density" + tag, om, 1e-8);

    double t13 = 0.0, t24 = 0.0;
    for (const auto& scheme : {InterpolationScheme::at_infinity(5), mixed_scheme(5)}) {
      const PadeAsymptotics A(B, scheme);
      for (cplx z : pts) t13 = std::max(t13, rel(A.rhs(z), si.pade_rhs(scheme, z)));
    }
    const CriticalAsymptotics A4(B, critical_point(*B.f, 4));
    for (cplx z : pts) t24 = std::max(t24, rel(A4.rhs(z), si.critical_rhs(4, z)));
    G.expect_le("one-interval Pade asymptotics = general assembly" + tag, t13, 1e-8);
    G.expect_le("one-interval critical asymptotics = general assembly" + tag, t24, 1e-8);
  }
  return G;
}

CheckGroup verify_criticality(const Bases& b, const std::vector<int>& ns) {
  CheckGroup G{"criticality", {}};
  for (int n : ns) {
    const std::string tag = " (n=" + std::to_string(n) + ")";
    const RationalApproximant r = critical_point(*b.f, n);
    const double E0 = l2_error_optimal(*b.f, r.q_zeros);
    G.expect_le("critical error = optimal-numerator error" + tag, std::abs(l2_error(*b.f, r) / E0 - 1.0), 1e-8);
    // First-order part of the change: central differences at d and d/2, Richardson-combined.
    double first = 0.0, total = 0.0;
    const double d = 1e-4;
    for (int j = 0; j < n; ++j) {
      const auto E2 = [&](double h) {
        auto x = r.q_zeros;
        x[j] += h;
        const double E = l2_error_optimal(*b.f, x);
        return E * E;
      };
      const double p1 = E2(d), m1 = E2(-d), p2 = E2(0.5 * d), m2 = E2(-0.5 * d);
      const double D1 = (p1 - m1) / (2.0 * d), D2 = (p2 - m2) / d;
      first = std::max(first, std::abs((4.0 * D2 - D1) / 3.0) * d / (E0 * E0));
      total = std::max({total, std::abs(p1 - E0 * E0), std::abs(m1 - E0 * E0)});
    }
    G.expect_le("first-order change under 1e-4 pole moves" + tag, first, 1e-6);
    G.checks.push_back({"total change under 1e-4 pole moves (second order, reported)" + tag, total / (E0 * E0),
                        INFINITY, true});
    double worst = 0.0;
    for (double x : r.q_zeros) {
      if (x == 0.0) continue;
      const double e1 = std::abs(pade_error(*b.f, r, 1.0 / x + 1e-2));
      const double e2 = std::abs(pade_error(*b.f, r, 1.0 / x + 1e-3));
      worst = std::max(worst, std::abs(std::log((e2 / e1) / 1e-2)));
    }
    G.expect_le("double interpolation h^2 scaling (log factor)" + tag, worst, std::log(3.0));
  }
  return G;
}

std::vector<CheckGroup> verify_all(int order) {
  const auto b = cfg_a(order);
  return {verify_orthogonality(*b),  verify_error_routes(*b), verify_scalar_maps(*b),
          verify_theta(*b),          verify_single_interval(order), verify_criticality(*b)};
}

}  // namespace mpade
