#include "doctest.h"
#include "mpade/basis.hpp"
#include "mpade/errors.hpp"
#include "support/oracles.hpp"

using namespace mpade;

namespace {
const std::vector<double> kA = {-0.7, -0.3, 0.2, 0.6};
const std::vector<double> kG2 = {-0.8, -0.5, -0.3, 0.0, 0.2, 0.7};
}  // namespace

TEST_CASE("gauss_legendre integrates polynomials") {
  const auto r = gauss_legendre(10);
  double s = 0.0, s18 = 0.0;
  for (std::size_t j = 0; j < r.nodes.size(); ++j) {
    s += r.weights[j];
    s18 += r.weights[j] * std::pow(r.nodes[j], 18);
  }
  CHECK(std::abs(s - 2.0) < 1e-14);
  CHECK(std::abs(s18 - 2.0 / 19.0) < 1e-14);
}

TEST_CASE("band integral of 1/w_+ on one interval") {
  Quadrature q(make_system({-1.0, 1.0}), 64);
  CHECK(std::abs(q.band_integral([](double) { return cplx(1.0); }) - cplx(0.0, -M_PI)) < 1e-13);
}

TEST_CASE("band and gap integrals against adaptive quadrature") {
  for (const auto& e : {kA, kG2}) {
    Quadrature q(make_system(e), 128);
    const auto& sys = q.system();
    const auto h = [](double x) { return std::exp(x) * (1.0 + x * x); };
    for (int k = 0; k < sys.bands(); ++k) {
      const double ref = oracle::singular_integral(e, h, sys.a(k), sys.b(k));
      const cplx got = q.band_integral(k, [&](double x) { return cplx(h(x)); });
      // -i w_+ = s_k |w|  =>  1/w_+ = -i s_k / |w|
      CHECK(std::abs(got - cplx(0.0, -sys.band_sign(k) * ref)) < 1e-12);
    }
    for (int i = 0; i < sys.genus; ++i) {
      const double ref = oracle::singular_integral(e, h, sys.gap_lo(i), sys.gap_hi(i));
      CHECK(std::abs(q.gap_integral(i, h) - sys.gap_sign(i) * ref) < 1e-12);
    }
  }
}

TEST_CASE("Cauchy transform off and on the bands") {
  Quadrature q(make_system(kA), 256);
  const auto h = [](double x) { return cplx(1.0 + x); };
  const cplx z(0.1, 0.4);
  // direct sum is accurate at this distance
  const cplx direct = q.band_integral([&](double x) { return h(x) / (x - z); });
  CHECK(std::abs(q.cauchy_band(h, z) - direct) < 1e-12);
  // boundary values from both sides average to the principal value; jump is 2 pi i h / w_+
  const double x0 = -0.5;
  const cplx up = q.cauchy_band(h, x0, Side::plus), dn = q.cauchy_band(h, x0, Side::minus);
  const cplx near = q.cauchy_band(h, cplx(x0, 1e-7));
  CHECK(std::abs(up - near) < 1e-4);
  const cplx jump = 2.0 * M_PI * cplx(0.0, 1.0) * h(x0) / w_of(q.system(), x0, Side::plus);
  CHECK(std::abs((up - dn) - jump) < 1e-10);
}

TEST_CASE("circle_mean") {
  CHECK(std::abs(circle_mean([](cplx) { return cplx(2.0); }, 64) - 4.0) < 1e-14);
  CHECK(std::abs(circle_mean([](cplx z) { return z; }, 64) - 1.0) < 1e-14);
  CHECK(std::abs(circle_mean([](cplx z) { return 1.0 + 0.5 / z; }, 64) - 1.25) < 1e-14);
}

TEST_CASE("log endpoint integral") {
  Quadrature q(make_system({-0.5, 0.5}), 128);
  const auto one = [](double) { return 1.0; };
  const auto dist = [](double x) { return std::abs(x - 0.5); };
  // x = cos(t)/2 turns it into int_0^pi log sin^2(t/2) dt = -2 pi log 2
  CHECK(std::abs(q.log_endpoint_integral(dist, {{0.5, 1.0}}, one) + 2.0 * M_PI * std::log(2.0)) < 1e-10);
  // smooth weight, oracle in the angle variable where the singularity is only logarithmic
  const auto g = [](double x) { return std::exp(x) * (1.0 + x); };
  const double ref = oracle::integrate(
      [&](double t) { return t > 0.0 ? 2.0 * std::log(std::sin(0.5 * t)) * g(0.5 * std::cos(t)) : 0.0; }, 0.0, M_PI);
  CHECK(std::abs(q.log_endpoint_integral(dist, {{0.5, 1.0}}, g) - ref) < 1e-10);
}

TEST_CASE("gap basis normalization") {
  for (const auto& e : {kA, kG2}) {
    Quadrature q(make_system(e), 128);
    const auto gb = gap_basis(q);
    const int g = q.system().genus;
    REQUIRE(static_cast<int>(gb.l.size()) == g);
    for (int i = 0; i < g; ++i)
      for (int k = 0; k < g; ++k) {
        const double v = q.gap_integral(k, [&](double x) { return gb.l[i](x); });
        CHECK(std::abs(v - (i == k ? 1.0 : 0.0)) < 1e-12);
      }
  }
  Quadrature q0(make_system({-1.0, 1.0}), 32);
  CHECK(gap_basis(q0).l.empty());
}

TEST_CASE("period matrix") {
  for (const auto& e : {kA, kG2}) {
    Quadrature q(make_system(e), 256), q2(make_system(e), 512);
    const auto B = period_matrix(q, gap_basis(q)).B;
    const auto B2 = period_matrix(q2, gap_basis(q2)).B;
    CHECK((B - B2).norm() < 1e-12);
    CHECK((B - B.transpose()).norm() < 1e-13);
    CHECK(B.real().norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B.imag());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("m_infinity and m_point") {
  Quadrature q(make_system(kG2), 256);
  const auto gb = gap_basis(q);
  const auto m = m_infinity(q, gb);
  CHECK(m.degree() == q.system().genus);
  // m / (pi i w_+) is a probability density
  const cplx mass = q.band_integral([&](double x) { return cplx(m(x)); }) / cplx(0.0, M_PI);
  CHECK(std::abs(mass - 1.0) < 1e-12);
  for (double x : {-0.75, -0.6, -0.3, -0.1, 0.1, 0.4})
    if (q.system().band_of(x) >= 0) CHECK((m(x) / w_of(q.system(), x, Side::plus) / cplx(0.0, 1.0)).real() > 0.0);
  for (int i = 0; i < q.system().genus; ++i) CHECK(std::abs(q.gap_integral(i, [&](double x) { return m(x); })) < 1e-12);
  const auto zs = zeros_per_gap(q.system(), m);
  for (const auto& z : zs) CHECK(z.size() == 1);
  // m_e: zero gap integrals of m_e / ((x - e) w)
  const cplx e(1.5, 0.3);
  const auto me = m_point(q, gb, e);
  for (int i = 0; i < q.system().genus; ++i) {
    const cplx v = q.gap_integral_c(i, [&](double x) { return me(cplx(x)) / (cplx(x) - e); });
    CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("condenser basis") {
  Quadrature q(make_system(kA), 256);
  const auto cb = condenser_basis(q);
  const auto cbp = condenser_basis(q, 0.05);
  CHECK(std::abs(band_integral_ww(q, cb.u) - cplx(0.0, -1.0)) < 1e-12);
  for (int i = 0; i < q.system().genus; ++i) CHECK(std::abs(gap_integral_ww(q, i, cb.u)) < 1e-12);
  REQUIRE(cb.u_zeros.size() == 1);
  CHECK(cb.u_zeros[0] > -0.3);
  CHECK(cb.u_zeros[0] < 0.2);
  // the transported construction gives the same u up to rounding
  for (double x : {-0.5, 0.0, 0.4, 0.9})
    CHECK(std::abs(cb.u(x) - cbp.u(x)) < 1e-9 * (1.0 + std::abs(cb.u(x))));
  CHECK_THROWS_AS(condenser_basis(Quadrature(make_system({-1.5, -0.5, 0.2, 0.6}), 64)), ValidationError);
}
