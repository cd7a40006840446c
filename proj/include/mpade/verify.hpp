#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mpade/approx.hpp"

namespace mpade {

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct CheckGroup {
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
  // value <= threshold
  void expect_le(const std::string& name, double value, double threshold);
  void expect(const std::string& name, bool ok);
};

// Benchmark: [-0.7, -0.3] u [0.2, 0.6], mu_dot = 1, m(x) = x.
std::unique_ptr<Bases> cfg_a(int order = 256);

CheckGroup verify_orthogonality(const Bases& b, int max_n = 12);
CheckGroup verify_error_routes(const Bases& b, int max_n = 8);
CheckGroup verify_scalar_maps(const Bases& b);
CheckGroup verify_theta(const Bases& b);
CheckGroup verify_single_interval(int order = 256);
CheckGroup verify_criticality(const Bases& b, const std::vector<int>& ns = {2, 3, 4, 5, 6, 7, 8, 9, 10});

std::vector<CheckGroup> verify_all(int order = 256);

}  // namespace mpade
