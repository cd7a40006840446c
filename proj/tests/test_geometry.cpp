#include <random>

#include "doctest.h"
#include "mpade/errors.hpp"
#include "mpade/geometry.hpp"
#include "mpade/polynomial.hpp"

using namespace mpade;

TEST_CASE("make_system validates and classifies") {
  const auto s0 = make_system({-1.0, 1.0});
  CHECK(s0.genus == 0);
  CHECK_FALSE(s0.unit_disk);
  const auto s1 = make_system({-0.7, -0.3, 0.2, 0.6});
  CHECK(s1.genus == 1);
  CHECK(s1.unit_disk);
  CHECK_THROWS_AS(make_system({0.2, 0.1}), ValidationError);
  CHECK_THROWS_AS(make_system({0.1, 0.2, 0.3}), ValidationError);
  CHECK_THROWS_AS(make_system({}), ValidationError);
}

TEST_CASE("w normalization and known values") {
  const auto s0 = make_system({-1.0, 1.0});
  CHECK(std::abs(w_of(s0, 2.0) - std::sqrt(3.0)) < 1e-15);
  const auto s1 = make_system({-0.7, -0.3, 0.2, 0.6});
  const cplx wp = w_of(s1, -0.5, Side::plus);
  CHECK(std::abs(wp - cplx(0.0, -std::sqrt(0.0308))) < 1e-14);
  for (double t : {0.1, 1.3, 2.9, 4.4}) {
    const cplx z = std::polar(1e8, t);
    CHECK(std::abs(w_of(s1, z) / (z * z) - 1.0) < 1e-6);
  }
}

TEST_CASE("branch consistency on the bands") {
  const auto sys = make_system({-0.8, -0.5, -0.3, 0.0, 0.2, 0.7});
  for (int k = 0; k < sys.bands(); ++k)
    for (int j = 1; j <= 50; ++j) {
      const double x = sys.a(k) + (sys.b(k) - sys.a(k)) * j / 51.0;
      const cplx p = w_of(sys, x, Side::plus), m = w_of(sys, x, Side::minus);
      CHECK(std::abs(p + m) < 1e-12);
      CHECK((cplx(0, -1) * p).real() * sys.band_sign(k) > 0.0);
      // limit from off-axis evaluation
      CHECK(std::abs(w_of(sys, cplx(x, 1e-12)) - p) < 1e-5);
    }
  const auto at_end = eval_w(sys, 0.2);
  CHECK(at_end.value == cplx(0.0, 0.0));
  CHECK(at_end.on_cut);
  CHECK_THROWS_AS(w_of(sys, -0.6), ValidationError);
}

TEST_CASE("w is real-symmetric") {
  const auto sys = make_system({-0.7, -0.3, 0.2, 0.6});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const cplx z(U(rng), U(rng));
    CHECK(std::abs(w_of(sys, std::conj(z)) - std::conj(w_of(sys, z))) < 1e-13);
  }
}

TEST_CASE("w tilde") {
  const auto sys = make_system({-0.7, -0.3, 0.2, 0.6});
  CHECK(std::abs(wt_of(sys, 0.0) - 1.0) < 1e-15);
  CHECK(wt_of(sys, 0.9).real() > 0.0);
  for (int j = -99; j <= 99; ++j) CHECK(wt_of(sys, j / 100.0).real() > 0.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> R(1.1, 3.0), A(0.0, 2.0 * M_PI);
  for (int t = 0; t < 100; ++t) {
    const cplx z = std::polar(R(rng), A(rng));
    if (std::abs(z.imag()) < 1e-3) continue;
    CHECK(std::abs(wt_of(sys, z) - z * z * w_of(sys, 1.0 / z)) < 1e-12 * std::abs(z * z));
  }
  CHECK_THROWS_AS(wt_of(sys, 1.0 / 0.4), ValidationError);
}

TEST_CASE("mobius maps") {
  CHECK(std::abs(mobius(0.0, cplx(0.3, 0.2)).value - cplx(0.3, 0.2)) < 1e-16);
  CHECK(std::abs(mobius(0.4, 0.4).value) < 1e-16);
  CHECK(mobius(0.5, 2.0).infinite);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  for (int t = 0; t < 100; ++t) {
    const double x0 = U(rng);
    const cplx z(U(rng), U(rng));
    CHECK(std::abs(mobius_inv(x0, mobius(x0, z).value).value - z) < 1e-14);
  }
}

TEST_CASE("polynomial helpers") {
  const RealPoly p = RealPoly::from_roots(std::vector<double>{1.0, -2.0});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(3.0) - 10.0) < 1e-15);
  CHECK(std::abs(p.derivative()(0.0) - 1.0) < 1e-15);
}
