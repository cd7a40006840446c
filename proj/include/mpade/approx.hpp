#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpade/scalarmaps.hpp"
#include "mpade/theta.hpp"

namespace mpade {

// mu_dot > 0 on Delta and the monic gap polynomial m, one zero per gap.
struct Density {
  std::function<double(double)> mu_dot;
  std::vector<double> m_zeros;

  RealPoly m() const { return RealPoly::from_roots(m_zeros); }
  double rho(double x) const;
};

// f(z) = int d mu(x) / (z - x), d mu = -(1 / pi i) rho(x) dx / w_+(x).
class MarkovFunction {
 public:
  MarkovFunction(const Quadrature& quad, Density density);

  const Quadrature& quad() const { return *quad_; }
  const Density& density() const { return density_; }
  cplx operator()(cplx z, Side side = Side::none) const;
  double mass() const { return mass_; }
  // Discrete measure on the band nodes: int h d mu = sum h(x_j) mu_j.
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& weights() const { return mu_; }
  // int h d mu / (z - x); z on a band needs a side.
  cplx cauchy(const ComplexFn& h, cplx z, Side side = Side::none) const;

 private:
  const Quadrature* quad_;
  Density density_;
  std::vector<double> x_, mu_;
  std::vector<std::vector<double>> panel_rho_dens_;  // rho * dens per band node
  double mass_ = 0.0;
};

// v(z) = prod (z - r) over finite roots times prod (1 - z x_j)^2 over reflected zeros.
struct WeightPoly {
  std::vector<cplx> roots;
  std::vector<double> reflected;
  cplx operator()(cplx z) const;
  double abs_at(double x) const { return std::abs((*this)(cplx(x, 0.0))); }
};

struct OrthoResult {
  std::vector<double> zeros;  // ascending
  std::vector<double> alpha, beta;
  double max_residual = 0.0;  // max_m |int x^m q d mu / v| / int |x^m q| d mu / |v|
};

// Monic q_n orthogonal against d mu / |v| by discrete Stieltjes with full reorthogonalization.
OrthoResult ortho_q(const MarkovFunction& mf, const WeightPoly& v, int n);
// Relative orthogonality residual of the given zeros under the measure of a quadrature.
double ortho_residual(const MarkovFunction& mf, const WeightPoly& v, const std::vector<double>& zeros);

struct RationalApproximant {
  int n = 0;
  std::vector<double> q_zeros;
  InterpolationScheme scheme;
  WeightPoly v;
  double kappa = 1.0;
  double ortho_residual = 0.0;
  // critical-point iteration record
  int iterations = 0;
  double displacement = 0.0;
  std::vector<std::vector<double>> trajectory;

  cplx q(cplx z) const;
  cplx q_tilde(cplx z) const;
};

RationalApproximant pade(const MarkovFunction& mf, const InterpolationScheme& scheme);

// f - p/q = (v / q^2)(z) int q^2 / v d mu / (z - x).
cplx pade_error(const MarkovFunction& mf, const RationalApproximant& r, cplx z, Side side = Side::none);
// f - p/q = (v / q)(z) R_n(z), R_n(z) = int q / v d mu / (z - x).
cplx pade_error_route2(const MarkovFunction& mf, const RationalApproximant& r, cplx z, Side side = Side::none);
// q f - v R_n fitted by a degree n - 1 polynomial at n points of |z| = radius; relative misfit at probes.
double consistency_residual(const MarkovFunction& mf, const RationalApproximant& r, const std::vector<cplx>& probes,
                            double radius = 2.0);

struct CriticalOptions {
  double tol = 1e-13;
  int max_iter = 2000;
  double alpha = 0.5;
  std::optional<std::vector<double>> init;
};

RationalApproximant critical_point(const MarkovFunction& mf, int n, const CriticalOptions& opt = {});
// The default fixed point first, then distinct ones (zeros apart by > 1e-8) reached from
// `restarts` starts spread over Delta; starts that fail to converge are skipped.
std::vector<RationalApproximant> critical_points(const MarkovFunction& mf, int n, int restarts,
                                                const CriticalOptions& opt = {});

// Error of the best numerator for a fixed denominator: (q~/q)(z) int q/q~ d mu/(z - x).
cplx optimal_error(const MarkovFunction& mf, const std::vector<double>& q_zeros, cplx z);
// ||f - r||_{L^2(T)}; throws when a pole is within 1e-6 of the circle.
double l2_error(const MarkovFunction& mf, const RationalApproximant& r, int circle_nodes = 1024);
double l2_error_optimal(const MarkovFunction& mf, const std::vector<double>& q_zeros, int circle_nodes = 1024);

// Everything attached to one interval system and one density.
class Bases {
 public:
  Bases(const std::vector<double>& endpoints, Density density, int order = 256);
  Bases(const Bases&) = delete;
  Bases& operator=(const Bases&) = delete;

  const IntervalSystem& system() const { return quad->system(); }

  std::unique_ptr<Quadrature> quad;
  GapBasis gb;
  PeriodMatrix pm;
  RealPoly m_inf;
  std::unique_ptr<Surface> surface;
  ThetaContext ctx;
  std::optional<CondenserBasis> cb;
  double rho_c = 0.0;  // condenser modulus
  Density density;
  std::unique_ptr<MarkovFunction> f;
  std::unique_ptr<SzegoS> S;
};

struct DivisorData {
  Divisor divisor;
  Eigen::VectorXd Vn;
  std::vector<double> omega;
  RealPoly m_n;
  std::vector<double> top;  // projections of top-sheet points
  int d_n = 0;
  DensityProfile lambda;

  cplx blaschke(cplx z) const;
};

// V_n = V + c + omega_n for E_n = {1/x_j x2}, then the Jacobi inversion.
DivisorData divisor_data(const Bases& b, const RationalApproximant& r);

}  // namespace mpade
