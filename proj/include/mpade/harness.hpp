#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mpade/approx.hpp"
#include "mpade/scenario.hpp"

namespace mpade {

// f - p/q against 2 (T_n psi_n)(z) (m S^2)(z) / w(z).
class PadeAsymptotics {
 public:
  PadeAsymptotics(const Bases& b, const InterpolationScheme& scheme);
  cplx rhs(cplx z) const;
  cplx error(cplx z) const;
  cplx psi(cplx z) const;

  RationalApproximant r;
  std::vector<double> omega;
  Eigen::VectorXd Vn;

 private:
  const Bases* b_;
  std::unique_ptr<Psi> psi_;
  std::unique_ptr<ThetaQuotient> T_;
};

// f - r_n against 2 G (m_n / B_n^2)(z) (D^2 / w)(z) (rho / phi(z))^{2(n - d_n)}.
class CriticalAsymptotics {
 public:
  CriticalAsymptotics(const Bases& b, RationalApproximant r);
  cplx rhs(cplx z) const;
  cplx error(cplx z) const;

  RationalApproximant r;
  DivisorData dd;
  std::unique_ptr<CondenserD> D;

 private:
  const Bases* b_;
};

cplx rhs_pade(const Bases& b, const InterpolationScheme& scheme, cplx z);
cplx rhs_critical(const Bases& b, const RationalApproximant& r, cplx z);

struct RatioRow {
  int n = 0;
  cplx z, err, rhs, ratio;
  double dev = 0.0;  // |ratio - 1|
};

struct NSummary {
  int n = 0;
  double max_dev = 0.0;
  double ortho_residual = 0.0;
  std::vector<double> omega;
  int d_n = 0;
  double G = 0.0;
  std::vector<double> divisor;
  double l2 = 0.0;
  int iterations = 0;
  std::vector<double> alt_l2;     // L2 errors of other critical points found from restarts
  std::vector<double> gap_jumps;  // arg of the gap jump of D / phi^(n - d_n), in turns
  std::vector<double> log_err, log_psi;  // per grid point (pade mode)
};

struct ToleranceCheck {
  std::string name;
  double value = 0.0, threshold = 0.0;
  bool pass = false;
};

struct RatioReport {
  Scenario scenario;
  std::vector<double> c_mu;  // Szego gap constants
  double rho = 0.0;          // condenser modulus, 0 outside the unit disk
  std::vector<RatioRow> rows;
  std::vector<NSummary> per_n;
  double slope = 0.0, slope_target = 0.0;
  std::vector<ToleranceCheck> checks;

  bool all_pass() const;
};

// Thread count from MPADE_THREADS, default 1.
int thread_count();
void parallel_for(int count, const std::function<void(int)>& body);

// Builds everything for the scenario; validation happens first.
RatioReport run_scenario(const Scenario& sc);
// "# {json}" metadata line followed by the CSV body.
std::string report_csv(const RatioReport& rep);
std::string summary_csv(const RatioReport& rep);
// Writes <dir>/<name>.csv and <dir>/<name>.summary.csv; returns the first path.
std::string write_report(const RatioReport& rep, const std::string& dir);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mpade
