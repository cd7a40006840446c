#include <random>

#include "doctest.h"
#include "mpade/approx.hpp"
#include "mpade/errors.hpp"
#include "support/oracles.hpp"

using namespace mpade;

namespace {
const std::vector<double> kA = {-0.7, -0.3, 0.2, 0.6};
double one(double) { return 1.0; }
}  // namespace

TEST_CASE("Markov function against adaptive quadrature") {
  Quadrature q(make_system(kA), 256);
  const MarkovFunction f(q, Density{[](double x) { return std::exp(x); }, {0.0}});
  const auto rho = [](double x) { return std::exp(x) * x; };
  for (cplx z : {cplx(0.0, 2.0), cplx(1.5, 0.0), cplx(-0.5, 0.1), cplx(0.0, 0.3)})
    CHECK(std::abs(f(z) - oracle::markov(kA, rho, z)) < 1e-11 * std::abs(f(z)));
  // z f(z) -> total mass
  const double mass = oracle::markov(kA, rho, 1e8).real() * 1e8;
  CHECK(std::abs(f.mass() - mass) < 1e-8);
  double s = 0.0;
  for (double m : f.weights()) s += m;
  CHECK(std::abs(s - f.mass()) < 1e-13);
}

TEST_CASE("Chebyshev measure") {
  Quadrature q(make_system({-1.0, 1.0}), 128);
  const MarkovFunction f(q, Density{one, {}});
  CHECK(std::abs(f(2.0) - 1.0 / std::sqrt(3.0)) < 1e-14);
  for (double x : {1.2, 3.0, -4.0})
    CHECK(std::abs(f(x) - std::copysign(oracle::chebyshev_markov_series(std::abs(x)), x)) < 1e-13);
  CHECK(std::abs(f.mass() - 1.0) < 1e-14);
  const auto r = pade(f, InterpolationScheme::at_infinity(3));
  REQUIRE(r.q_zeros.size() == 3);
  CHECK(std::abs(r.q_zeros[0] + std::sqrt(3.0) / 2.0) < 1e-13);
  CHECK(std::abs(r.q_zeros[1]) < 1e-13);
  CHECK(std::abs(r.q_zeros[2] - std::sqrt(3.0) / 2.0) < 1e-13);
}

TEST_CASE("Pade interpolation order at infinity") {
  const Quadrature q(make_system(kA), 256);
  const MarkovFunction f(q, Density{one, {0.0}});
  for (int n : {2, 4, 6}) {
    const auto r = pade(f, InterpolationScheme::at_infinity(n));
    CHECK(r.ortho_residual < 1e-10);
    const cplx z(30.0, 11.0);
    const double ratio = std::abs(pade_error(f, r, 2.0 * z) / pade_error(f, r, z));
    CHECK(std::abs(ratio * std::pow(2.0, 2 * n + 1) - 1.0) < 0.05);
  }
}

TEST_CASE("Pade with finite interpolation points") {
  const Quadrature q(make_system(kA), 256);
  const MarkovFunction f(q, Density{one, {0.0}});
  InterpolationScheme s;
  s.n = 3;
  s.points = {{{1.5, 0.4}, false, 1}, {{1.5, -0.4}, false, 1}, {{-2.0, 0.0}, false, 2}, {{0.0, 0.0}, true, 2}};
  const auto r = pade(f, s);
  CHECK(r.ortho_residual < 1e-10);
  // the error vanishes at the interpolation points, doubly at -2
  CHECK(std::abs(pade_error(f, r, cplx(1.5, 0.4) + 1e-5)) < 1e-8);
  const double e1 = std::abs(pade_error(f, r, -2.0 + 1e-3)), e2 = std::abs(pade_error(f, r, -2.0 + 2e-3));
  CHECK(std::abs(e2 / e1 - 4.0) < 0.05);
  CHECK(consistency_residual(f, r, {{0.3, 1.1}, {-1.5, 0.2}}) < 1e-8);
}

TEST_CASE("L2 error of the zero approximant") {
  const Quadrature q(make_system(kA), 256);
  const MarkovFunction f(q, Density{one, {0.0}});
  // ||f||^2 on the circle is the sum of squared moments; moments decay like 0.7^k
  double s = 0.0;
  for (int k = 0; k < 120; ++k) {
    double ck = 0.0;
    for (int band = 0; band < 2; ++band)
      ck += oracle::singular_integral(
                kA, [k](double x) { return std::pow(x, k) * x / M_PI; }, kA[2 * band], kA[2 * band + 1]) /
            oracle::band_sign(kA, band);
    s += ck * ck;
  }
  const auto r0 = pade(f, InterpolationScheme::at_infinity(0));
  CHECK(std::abs(l2_error(f, r0, 512) - std::sqrt(s)) < 1e-12);
}

TEST_CASE("critical point of a symmetric measure") {
  const Quadrature q(make_system({-0.5, 0.5}), 256);
  const MarkovFunction f(q, Density{one, {}});
  const auto r = critical_point(f, 2);
  REQUIRE(r.q_zeros.size() == 2);
  CHECK(std::abs(r.q_zeros[0] + r.q_zeros[1]) < 1e-10);
  CHECK(r.ortho_residual < 1e-10);
  const double e = l2_error(f, r);
  CHECK(std::abs(e - l2_error_optimal(f, r.q_zeros)) < 1e-12);
  // local minimum of the L2 error over the pole positions
  for (double d : {1e-3, -1e-3}) {
    CHECK(l2_error_optimal(f, {r.q_zeros[0] + d, r.q_zeros[1]}) > e);
    CHECK(l2_error_optimal(f, {r.q_zeros[0] + d, r.q_zeros[1] - d}) > e);
  }
}

TEST_CASE("critical point on two bands") {
  const Bases b(kA, Density{one, {0.0}}, 256);
  for (int n : {3, 6}) {
    const auto r = critical_point(*b.f, n);
    CHECK(r.ortho_residual < 1e-10);
    CHECK(r.displacement < 1e-12);
    for (double x : r.q_zeros) {
      CHECK(x > -0.7);
      CHECK(x < 0.6);
    }
    const auto dd = divisor_data(b, r);
    CHECK(dd.divisor.residual < 1e-10);
    CHECK((dd.d_n == 0 || dd.d_n == 1));
    for (double x : {-0.6, 0.4}) CHECK(dd.lambda.eval(x) > 0.0);
  }
}

TEST_CASE("critical points from several starts") {
  const Quadrature q(make_system(kA), 256);
  const MarkovFunction f(q, Density{one, {0.0}});
  for (int n : {3, 5}) {
    const auto all = critical_points(f, n, 3);
    REQUIRE(!all.empty());
    const auto ref = critical_point(f, n);
    for (int j = 0; j < n; ++j) CHECK(all.front().q_zeros[j] == ref.q_zeros[j]);
    for (std::size_t a = 1; a < all.size(); ++a) {
      CHECK(all[a].ortho_residual < 1e-10);
      double d = 0.0;
      for (int j = 0; j < n; ++j) d = std::max(d, std::abs(all[a].q_zeros[j] - ref.q_zeros[j]));
      CHECK(d > 1e-8);
    }
  }
}

TEST_CASE("input validation") {
  const Quadrature q(make_system(kA), 64);
  CHECK_THROWS_AS(MarkovFunction(q, Density{one, {}}), ValidationError);
  CHECK_THROWS_AS(MarkovFunction(q, Density{one, {0.5}}), ValidationError);
  CHECK_THROWS_AS(MarkovFunction(q, Density{[](double x) { return x; }, {0.0}}), ValidationError);
  const MarkovFunction f(q, Density{one, {0.0}});
  InterpolationScheme s;
  s.n = 1;
  s.points = {{{-0.5, 0.0}, false, 2}};
  CHECK_THROWS_AS(pade(f, s), ValidationError);
}
