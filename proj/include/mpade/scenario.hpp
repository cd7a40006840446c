#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpade/errors.hpp"
#include "mpade/scalarmaps.hpp"

namespace mpade {

// Product of factors poly(c0 c1 ...), exp(c0 c1 ...) and rational(num ; den),
// coefficients in ascending powers.
struct DensityExpr {
  struct Factor {
    enum class Kind { poly, exp, rational } kind = Kind::poly;
    std::vector<double> num, den;
  };
  std::vector<Factor> factors;
  std::string text;

  double operator()(double x) const;
  static DensityExpr parse(const std::string& text);
};

enum class Mode { pade, critical };

struct Tolerances {
  std::optional<double> max_dev_last;  // max |ratio - 1| at the largest n
  bool require_decrease = false;       // max |ratio - 1| smaller at the largest n than at the smallest
  std::optional<double> rate;          // relative slope tolerance
};

struct Scenario {
  static constexpr int kVersion = 1;

  std::string name;
  std::vector<double> endpoints;
  DensityExpr mu_dot;
  std::vector<double> m_zeros;
  Mode mode = Mode::pade;
  std::vector<SchemePoint> fixed_points;  // finite part of E_n; the rest sits at infinity
  std::vector<int> n_list;
  std::vector<cplx> grid;
  int quad_order = 256;
  int circle_nodes = 1024;
  double critical_tol = 1e-13;
  int critical_max_iter = 2000;
  int critical_restarts = 0;      // extra starting points for the critical-point search
  bool report_gap_jumps = false;  // report-only gap jumps of D / phi^(n - d_n)
  Tolerances tol;

  InterpolationScheme scheme(int n) const;
};

// Field-level problems collected while reading a scenario.
class ScenarioError : public ValidationError {
 public:
  explicit ScenarioError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

Scenario parse_scenario(const std::string& text, const std::string& name = "scenario");
Scenario load_scenario(const std::string& path);
// Checks every module precondition before any heavy work; throws ScenarioError.
void validate_scenario(const Scenario& sc);

// "1.5", "-2", "0.3+0.9i", "2i", "inf"
cplx parse_complex(const std::string& s);
std::string format_complex(cplx z);

}  // namespace mpade
