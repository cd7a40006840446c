#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "mpade/errors.hpp"
#include "mpade/harness.hpp"
#include "mpade/verify.hpp"

namespace {

int run(const std::string& path, const std::string& out, int quad_order, int circle_nodes, bool tol_report) {
  mpade::Scenario sc = mpade::load_scenario(path);
  if (quad_order > 0) sc.quad_order = quad_order;
  if (circle_nodes > 0) sc.circle_nodes = circle_nodes;
  const mpade::RatioReport rep = mpade::run_scenario(sc);
  const std::string file = mpade::write_report(rep, out);
  std::cout << "wrote " << file << "\n";
  if (tol_report)
    for (const auto& c : rep.checks)
      std::printf("%-14s %s  value %.6g  threshold %.6g\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value,
                  c.threshold);
  return rep.all_pass() ? 0 : 1;
}

int verify(int quad_order) {
  bool ok = true;
  for (const auto& g : mpade::verify_all(quad_order)) {
    for (const auto& c : g.checks)
      std::printf("[%s] %-55s %s  %.3e (<= %.1e)\n", g.name.c_str(), c.name.c_str(), c.pass ? "PASS" : "FAIL",
                  c.value, c.threshold);
    ok = ok && g.pass();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipoint Pade and critical-point asymptotics for Markov functions on several intervals"};
  app.require_subcommand(1);

  std::string path, out = ".";
  int quad_order = 0, circle_nodes = 0;
  bool tol_report = false;
  auto* run_cmd = app.add_subcommand("run", "run a scenario file and write ratio tables");
  run_cmd->add_option("scenario", path, "scenario file")->required();
  run_cmd->add_option("--out", out, "output directory");
  run_cmd->add_option("--quad-order", quad_order, "quadrature nodes per band or gap");
  run_cmd->add_option("--circle-nodes", circle_nodes, "trapezoid nodes on the unit circle");
  run_cmd->add_flag("--tol-report", tol_report, "print each scenario tolerance check");

  int verify_order = 256;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_option("--quad-order", verify_order, "quadrature nodes per band or gap");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(path, out, quad_order, circle_nodes, tol_report);
    return verify(verify_order);
  } catch (const mpade::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const mpade::NumericalError& e) {
    std::cerr << "numerical failure in " << e.module() << ": " << e.what() << "\n";
    return 3;
  }
}
