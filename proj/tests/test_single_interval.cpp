#include "doctest.h"
#include "mpade/single_interval.hpp"
#include "mpade/verify.hpp"
#include "support/oracles.hpp"

using namespace mpade;

TEST_CASE("closed forms on one interval") {
  const SingleInterval si(-0.3, 0.6, [](double x) { return std::exp(x); });
  const double k = 0.9 / (1.0 + 0.18);
  CHECK(std::abs(si.K() - oracle::elliptic_k(k)) < 1e-13);
  CHECK(std::abs(si.rho() - std::exp(-M_PI * oracle::elliptic_k(std::sqrt(1 - k * k)) / (2 * oracle::elliptic_k(k)))) <
        1e-12);
  // omega is a probability measure on [a, b]
  // in the angle variable d omega = c dt / sqrt((1 - a x)(1 - b x))
  const double mass = oracle::integrate(
      [&](double t) {
        const double x = 0.15 + 0.45 * std::cos(t);
        return si.c() / std::sqrt((1.0 + 0.3 * x) * (1.0 - 0.6 * x));
      },
      0.0, M_PI);
  CHECK(std::abs(si.omega_density(0.2) * std::sqrt(0.5 * 0.4) - si.c() / std::sqrt(1.06 * 0.88)) < 1e-14);
  CHECK(std::abs(mass - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(si.phi(std::polar(1.0, 0.7))) - 1.0) < 1e-11);
  CHECK(std::abs(si.phi(1.0) - 1.0) < 1e-13);
  const cplx z(0.4, 0.8);
  CHECK(std::abs(si.psi(z) - (z - 0.15 - si.w(z)) / 0.45) < 1e-14);
}

TEST_CASE("Szego function of exp(x) on [-1, 1]") {
  // log mu_dot = x integrates in closed form: S = exp((z - w) / 2)
  const SingleInterval si(-1.0, 1.0, [](double x) { return std::exp(x); }, 32, 32);
  for (cplx z : {cplx(0.0, 1.0), cplx(2.0, 0.0), cplx(-1.5, 0.5), cplx(0.3, -0.4)})
    CHECK(std::abs(si.S(z) - std::exp(0.5 * (z - si.w(z)))) < 1e-12);
}

TEST_CASE("one-interval closed forms agree with the general machinery") {
  const CheckGroup g = verify_single_interval(256);
  for (const auto& c : g.checks) {
    INFO(c.name << " = " << c.value);
    CHECK(c.pass);
  }
}
