#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mpade/harness.hpp"

using namespace mpade;

namespace {
const char* kSmall = R"(mpade-scenario 1
# small run
name = small
endpoints = -0.7 -0.3 0.2 0.6
mu_dot = poly(1 0.5) * exp(0 0.3)
m_zeros = 0
mode = pade
scheme = 1.5+0.5i, 1.5-0.5i, -2:2
n = 3 4 5
grid = 2i 1.5
quad_order = 128
tol.max_dev_last = 0.5
)";

bool has(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
  CHECK(parse_complex("-2") == cplx(-2.0, 0.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("0.3+0.9i") == cplx(0.3, 0.9));
  CHECK(parse_complex("0.3-0.9i") == cplx(0.3, -0.9));
  CHECK(parse_complex("1e-3-2e1i") == cplx(1e-3, -20.0));
  CHECK_THROWS(parse_complex("abc"));
  CHECK_THROWS(parse_complex("1+"));
  for (cplx z : {cplx(0.1, 0.0), cplx(0.0, -0.7), cplx(1.0 / 3.0, 2.0 / 7.0)})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("density expressions") {
  const auto d = DensityExpr::parse("poly(1 0.5) * exp(0 0.3) * rational(1 ; 2 1)");
  const double x = 0.4;
  CHECK(d(x) == doctest::Approx((1.0 + 0.5 * x) * std::exp(0.3 * x) / (2.0 + x)).epsilon(1e-15));
  CHECK_THROWS(DensityExpr::parse("poly()"));
  CHECK_THROWS(DensityExpr::parse("sin(1)"));
  CHECK_THROWS(DensityExpr::parse("poly(1) *"));
}

TEST_CASE("scenario parsing") {
  const Scenario sc = parse_scenario(kSmall);
  CHECK(sc.name == "small");
  CHECK(sc.endpoints.size() == 4);
  CHECK(sc.n_list == std::vector<int>{3, 4, 5});
  CHECK(sc.grid.size() == 2);
  CHECK(sc.fixed_points.size() == 3);
  CHECK(sc.tol.max_dev_last.value() == 0.5);
  CHECK_FALSE(sc.tol.rate.has_value());
  const auto s4 = sc.scheme(4);
  CHECK(s4.total() == 8);
  CHECK(s4.infinite_count() == 4);
  CHECK_NOTHROW(validate_scenario(sc));
}

TEST_CASE("scenario errors are collected per field") {
  try {
    parse_scenario("mpade-scenario 1\nendpoints = -1 1\nbogus line\nn = 1 x\n");
    FAIL("no throw");
  } catch (const ScenarioError& e) {
    CHECK(has(e.problems(), "line 3"));
    CHECK(has(e.problems(), "line 4"));
    CHECK(has(e.problems(), "mu_dot: required"));
    CHECK(has(e.problems(), "grid: required"));
  }
  CHECK_THROWS_AS(parse_scenario("mpade-scenario 2\n"), ScenarioError);

  Scenario sc = parse_scenario(kSmall);
  sc.m_zeros = {0.4};
  sc.grid.push_back(cplx(-0.5, 0.0));
  sc.n_list = {5, 4};
  try {
    validate_scenario(sc);
    FAIL("no throw");
  } catch (const ScenarioError& e) {
    CHECK(has(e.problems(), "m_zeros"));
    CHECK(has(e.problems(), "grid"));
    CHECK(has(e.problems(), "strictly increasing"));
  }
  sc = parse_scenario(kSmall);
  sc.mode = Mode::critical;
  CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);  // fixed points in critical mode
}

TEST_CASE("regression slope") {
  CHECK(regression_slope({1, 2, 3, 4}, {3, 5, 7, 9}) == doctest::Approx(2.0));
  CHECK(regression_slope({0, 1, 2}, {1, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("report format and determinism") {
  const Scenario sc = parse_scenario(kSmall);
  setenv("MPADE_THREADS", "1", 1);
  const RatioReport a = run_scenario(sc);
  setenv("MPADE_THREADS", "3", 1);
  const RatioReport b = run_scenario(sc);
  unsetenv("MPADE_THREADS");
  const std::string csv = report_csv(a);
  CHECK(csv == report_csv(b));
  CHECK(summary_csv(a) == summary_csv(b));

  std::istringstream in(csv);
  std::string meta, header, line;
  std::getline(in, meta);
  std::getline(in, header);
  CHECK(meta.rfind("# {", 0) == 0);
  CHECK(meta.find("\"scenario\":\"small\"") != std::string::npos);
  CHECK(header == "n,z_re,z_im,abs_err,abs_rhs,ratio_re,ratio_im,dev");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);
  CHECK(a.rows.size() == 6);
  CHECK(a.per_n.size() == 3);
  for (const auto& r : a.rows) CHECK(r.dev < 0.5);
  CHECK(a.all_pass());

  const auto dir = std::filesystem::temp_directory_path() / "mpade_harness_test";
  const std::string path = write_report(a, dir.string());
  CHECK(std::filesystem::exists(path));
  CHECK(std::filesystem::exists(dir / "small.summary.csv"));
}

TEST_CASE("critical-mode summary columns") {
  Scenario sc = parse_scenario(kSmall);
  sc.mode = Mode::critical;
  sc.fixed_points.clear();
  sc.n_list = {4, 5};
  sc.critical_restarts = 1;
  sc.report_gap_jumps = true;
  const RatioReport rep = run_scenario(sc);
  const std::string summary = summary_csv(rep);
  CHECK(summary.find("iterations,alt_l2,gap_jumps\n") != std::string::npos);
  for (const auto& s : rep.per_n) {
    CHECK(s.gap_jumps.size() == 1);
    CHECK(std::abs(s.gap_jumps[0]) <= 0.5);
  }
  CHECK(report_csv(rep).find("dev,d_n,G_lambda,divisor\n") != std::string::npos);
  sc.mode = Mode::pade;
  CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);
}

TEST_CASE("bundled scenarios parse and validate") {
  const char* dir = std::getenv("MPADE_SCENARIO_DIR");
  if (!dir) return;
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".scenario") continue;
    const Scenario sc = load_scenario(entry.path().string());
    CHECK(sc.name == entry.path().stem().string());
    CHECK_NOTHROW(validate_scenario(sc));
    ++count;
  }
  CHECK(count >= 2);
}
