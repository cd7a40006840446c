#include <random>

#include "doctest.h"
#include "mpade/theta.hpp"
#include "support/oracles.hpp"

using namespace mpade;

namespace {
struct World {
  explicit World(std::vector<double> e, int order = 256)
      : q(make_system(std::move(e)), order), gb(gap_basis(q)), pm(period_matrix(q, gb)), S(q, gb, pm) {}
  Quadrature q;
  GapBasis gb;
  PeriodMatrix pm;
  Surface S;
};
}  // namespace

TEST_CASE("theta against direct sums") {
  for (double y : {0.5, 1.0, 2.0}) {
    Eigen::MatrixXcd B(1, 1);
    B(0, 0) = cplx(0.0, y);
    CHECK(std::abs(theta_eval(B, theta_radius(B), Eigen::VectorXcd::Zero(1)) - oracle::theta0_g1(y)) < 1e-14);
  }
  Eigen::MatrixXcd B(1, 1);
  B(0, 0) = cplx(0.0, 1.0);
  CHECK(std::abs(theta_eval(B, theta_radius(B), Eigen::VectorXcd::Zero(1)) - 1.0864348112133080) < 1e-13);
  // half-period zero
  Eigen::VectorXcd u(1);
  u(0) = 0.5 * (1.0 + B(0, 0));
  CHECK(std::abs(theta_eval(B, theta_radius(B), u)) < 1e-14);
}

TEST_CASE("theta quasi-periodicity along B") {
  World w({-0.8, -0.5, -0.3, 0.0, 0.2, 0.7});
  const auto& B = w.S.B();
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXcd u(2);
    u << cplx(U(rng), U(rng)), cplx(U(rng), U(rng));
    for (int k = 0; k < 2; ++k) {
      const cplx lhs = theta_eval(B, w.S.R(), u + B.col(k));
      const cplx rhs = std::exp(cplx(0.0, -M_PI) * B(k, k) - cplx(0.0, 2.0 * M_PI) * u(k)) * theta_eval(B, w.S.R(), u);
      CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
    }
  }
}

TEST_CASE("Riemann constants") {
  World w({-0.7, -0.3, 0.2, 0.6});
  for (const auto& p : w.S.probes()) CHECK(w.S.vanishing_ratio(w.S.K_std(), p) < 1e-8);
  CHECK(w.S.vanishing_ratio(w.S.K_std(), {2.0}) < 1e-8);
  // a wrong constant does not vanish
  Eigen::VectorXcd K = w.S.K_std();
  K(0) += 0.25;
  CHECK(w.S.vanishing_ratio(K, {2.0}) > 1e-3);
}

TEST_CASE("Abel map along the alpha cycle") {
  World w({-0.7, -0.3, 0.2, 0.6});
  CHECK(std::abs(w.S.cycle_abel(0, 2.0 * M_PI)(0) - 1.0) < 1e-12);
  CHECK(std::abs(w.S.cycle_abel(0, 0.0)(0)) < 1e-15);
  // derivative matches a difference quotient
  const double a = 1.1, h = 1e-5;
  const double fd = (w.S.cycle_abel(0, a + h)(0) - w.S.cycle_abel(0, a - h)(0)) / (2.0 * h);
  CHECK(std::abs(fd - w.S.cycle_rate(0, a)(0)) < 1e-7);
  // top and bottom sheet angles project to the same x
  const double x = -0.1;
  CHECK(std::abs(w.S.cycle_x(0, w.S.cycle_angle(0, x, Sheet::top)) - x) < 1e-13);
  CHECK(std::abs(w.S.cycle_x(0, w.S.cycle_angle(0, x, Sheet::bottom)) - x) < 1e-13);
}

TEST_CASE("Jacobi inversion") {
  World w({-0.8, -0.5, -0.3, 0.0, 0.2, 0.7});
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> A(0.2, 2.0 * M_PI - 0.2);
  for (int t = 0; t < 6; ++t) {
    const std::vector<double> target = {A(rng), A(rng)};
    Eigen::VectorXd rhs = w.S.cycle_abel(0, target[0]) + w.S.cycle_abel(1, target[1]);
    const Divisor D = solve_jip(w.S, rhs, {M_PI / 2, 3 * M_PI / 2});
    CHECK(D.residual < 1e-10);
    for (int i = 0; i < 2; ++i) {
      CHECK(D.points[i].z.real() >= w.q.system().gap_lo(i) - 1e-12);
      CHECK(D.points[i].z.real() <= w.q.system().gap_hi(i) + 1e-12);
    }
  }
}

TEST_CASE("theta quotient") {
  World w({-0.7, -0.3, 0.2, 0.6});
  const ThetaContext ctx = w.S.context({0.0});
  // V_n = V gives T = 1
  const ThetaQuotient T0(w.S, ctx, ctx.V);
  for (cplx z : {cplx(0.0, 1.0), cplx(2.0, 0.0), cplx(-0.5, 0.2)}) CHECK(std::abs(T0.T(z) - 1.0) < 1e-9);
  Eigen::VectorXd Vn = ctx.V;
  Vn(0) += 0.3;
  const ThetaQuotient T(w.S, ctx, Vn);
  for (double x : {-0.6, -0.4, 0.3, 0.5})
    for (Side s : {Side::plus, Side::minus}) CHECK(std::abs(std::abs(T.T(x, s)) - 1.0) < 1e-8);
  const double x = -0.05;
  const cplx jump = T.T(x, Side::plus) / T.T(x, Side::minus);
  CHECK(std::abs(jump - std::exp(cplx(0.0, 4.0 * M_PI * 0.3))) < 1e-8);
}

TEST_CASE("Szego function of a polynomial") {
  World w({-0.7, -0.3, 0.2, 0.6});
  for (cplx e : {cplx(2.0, 0.0), cplx(-1.5, 0.0), cplx(1.2, 0.8)}) {
    const SzegoPoly Sq(w.S, e);
    const auto q = [&](cplx x) { return e.imag() == 0.0 ? x - e : (x - e) * (x - std::conj(e)); };
    for (double x : {-0.6, -0.4, 0.3, 0.5}) {
      const cplx p = Sq(x, Side::plus), m = Sq(x, Side::minus);
      CHECK(std::abs(p * m - q(x)) < 1e-9 * std::abs(q(x)));
      CHECK(std::abs(std::norm(p) - std::abs(q(x))) < 1e-9 * std::abs(q(x)));
    }
    // S(a_1) is imaginary when q(a_1) < 0, which turns the reflection into an anti-symmetry
    const double sigma = q(-0.7).real() < 0.0 ? -1.0 : 1.0;
    const cplx z(0.4, 0.9);
    CHECK(std::abs(Sq(std::conj(z)) - sigma * std::conj(Sq(z))) < 1e-10 * std::abs(Sq(z)));
  }
}
