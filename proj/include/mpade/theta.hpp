#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpade/basis.hpp"
#include "mpade/paths.hpp"

namespace mpade {

enum class Sheet { top, bottom, ramification };

struct SurfacePoint {
  cplx z{0.0, 0.0};
  Sheet sheet = Sheet::top;
  Side side = Side::none;  // trace on a cut of the top-sheet Abel map
  bool infinite = false;

  SurfacePoint involution() const;
};

struct Divisor {
  std::vector<SurfacePoint> points;
  std::vector<double> gap_angles;  // x = c - r cos(angle) on gap i; (0, pi) top, (pi, 2 pi) bottom
  double residual = 0.0;           // max |sum A - rhs| after integer reduction
  bool near_involution = false;    // two angles within 1e-6 of mirrored positions (report only)
  std::string method;              // newton, damped or sweep
};

struct ThetaContext {
  Eigen::MatrixXcd B;
  int R = 0;
  Eigen::VectorXcd K_std;  // Riemann constants for the base point b_g
  Eigen::VectorXcd K_gap;  // K_std + sum_i a(b_i), paired with gap-based divisor sums
  Eigen::VectorXd V;       // sum over the divisor {s_i} of the alpha-cycle integrals
  std::vector<double> s_angles;
};

// Truncation radius for the lattice sum with tail below 1e-16 relative.
int theta_radius(const Eigen::MatrixXcd& B);
cplx theta_eval(const Eigen::MatrixXcd& B, int R, const Eigen::VectorXcd& u);
cplx theta_eval(const ThetaContext& ctx, const Eigen::VectorXcd& u);

class Surface {
 public:
  Surface(const Quadrature& quad, const GapBasis& gb, const PeriodMatrix& pm);

  const IntervalSystem& system() const { return quad_->system(); }
  int genus() const { return quad_->system().genus; }
  const Eigen::MatrixXcd& B() const { return B_; }
  const GapBasis& basis() const { return *gb_; }

  // Top-sheet Abel map from b_g; points on the cut need a side.
  Eigen::VectorXcd abel(cplx z, Side side = Side::none) const;
  Eigen::VectorXcd abel(const SurfacePoint& P) const;
  Eigen::VectorXcd abel_infinity() const;

  // int_0^angle of l / (2 w) along alpha_i started at b_i; A(2 pi) = e_i.
  Eigen::VectorXd cycle_abel(int i, double angle) const;
  // d/d angle of cycle_abel
  Eigen::VectorXd cycle_rate(int i, double angle) const;
  double cycle_x(int i, double angle) const;
  double cycle_angle(int i, double x, Sheet sheet) const;
  SurfacePoint cycle_point(int i, double angle) const;
  // a(b_i) + A^(i)(angle)
  Eigen::VectorXcd abel_cycle(int i, double angle) const;

  // Context with V built from the bottom-sheet divisor over the gap zeros s_i.
  ThetaContext context(const std::vector<double>& s) const;
  const Eigen::VectorXcd& K_std() const { return K_std_; }
  const Eigen::VectorXcd& K_gap() const { return K_gap_; }
  int R() const { return R_; }

  // Vanishing ratio of the candidate K for a probe divisor given by cycle angles.
  double vanishing_ratio(const Eigen::VectorXcd& K, const std::vector<double>& angles) const;
  const std::vector<std::vector<double>>& probes() const { return probes_; }

 private:
  void find_riemann_constants();

  const Quadrature* quad_;
  const GapBasis* gb_;
  Eigen::MatrixXcd B_;
  int R_ = 0;
  Eigen::VectorXcd K_std_, K_gap_;
  std::vector<Eigen::VectorXcd> abel_b_;  // a(b_i), upper trace
  std::vector<cplx> singular_;
  std::vector<std::vector<double>> probes_;
  std::vector<Eigen::VectorXcd> grid_;  // Abel images of the vanishing-test grid
};

// Solves sum_i A^(i)(angle_i) = rhs mod Z^g, starting from the given angles.
Divisor solve_jip(const Surface& S, const Eigen::VectorXd& rhs, const std::vector<double>& init_angles);

class ThetaQuotient {
 public:
  ThetaQuotient(const Surface& S, const ThetaContext& ctx, Eigen::VectorXd Vn);
  // Theta_n(P); infinite at its poles.
  cplx Theta(const SurfacePoint& P) const;
  cplx T(cplx z, Side side = Side::none) const;

 private:
  const Surface* S_;
  const ThetaContext* ctx_;
  Eigen::VectorXd Vn_;
};

// S_q for q = z - e (real e) or q = (z - e)(z - conj e): S_+ S_- = q on Delta,
// normalized by S_q(a_0)^2 = q(a_0).
class SzegoPoly {
 public:
  SzegoPoly(const Surface& S, cplx e);
  cplx operator()(cplx z, Side side = Side::none) const;

 private:
  cplx S_e(cplx e, const Eigen::VectorXcd& ae, cplx z, Side side) const;

  const Surface* S_;
  std::vector<cplx> roots_;
  std::vector<Eigen::VectorXcd> abel_roots_;
  std::vector<cplx> norm_;
  Eigen::VectorXcd a_inf_;
};

}  // namespace mpade
