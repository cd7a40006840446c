#include "mpade/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ValidationError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& w : words(s)) out.push_back(parse_double(w));
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ValidationError("not a boolean: '" + s + "'");
}

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

}  // namespace

// ---------------------------------------------------------------- density grammar

double DensityExpr::operator()(double x) const {
  double v = 1.0;
  for (const Factor& f : factors) {
    switch (f.kind) {
      case Factor::Kind::poly: v *= horner(f.num, x); break;
      case Factor::Kind::exp: v *= std::exp(horner(f.num, x)); break;
      case Factor::Kind::rational: v *= horner(f.num, x) / horner(f.den, x); break;
    }
  }
  return v;
}

DensityExpr DensityExpr::parse(const std::string& text) {
  DensityExpr e;
  e.text = trim(text);
  const auto parts = split(e.text, '*');
  if (parts.size() != static_cast<std::size_t>(std::count(e.text.begin(), e.text.end(), '*')) + 1)
    throw ValidationError("density '" + e.text + "' has an empty factor");
  for (const std::string& part : parts) {
    const auto open = part.find('(');
    if (open == std::string::npos || part.back() != ')')
      throw ValidationError("density factor '" + part + "' must look like kind(coefficients)");
    const std::string kind = trim(part.substr(0, open));
    const std::string args = part.substr(open + 1, part.size() - open - 2);
    Factor f;
    if (kind == "poly" || kind == "exp") {
      f.kind = kind == "poly" ? Factor::Kind::poly : Factor::Kind::exp;
      f.num = parse_doubles(args);
    } else if (kind == "rational") {
      f.kind = Factor::Kind::rational;
      const auto nd = split(args, ';');
      if (nd.size() != 2) throw ValidationError("rational(...) needs 'numerator ; denominator'");
      f.num = parse_doubles(nd[0]);
      f.den = parse_doubles(nd[1]);
      if (f.den.empty()) throw ValidationError("rational(...) has an empty denominator");
    } else {
      throw ValidationError("unknown density factor '" + kind + "' (poly, exp, rational)");
    }
    if (f.num.empty()) throw ValidationError("density factor '" + part + "' has no coefficients");
    e.factors.push_back(std::move(f));
  }
  if (e.factors.empty()) throw ValidationError("empty density expression");
  return e;
}

// ---------------------------------------------------------------- complex literals

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ValidationError("empty complex literal");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  const auto coef = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split_at == std::string::npos) return {0.0, coef(s)};
  return {parse_double(s.substr(0, split_at)), coef(s.substr(split_at))};
}

std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// ---------------------------------------------------------------- scenario files

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : ValidationError([&] {
        std::string s = "invalid scenario:";
        for (const auto& p : problems) s += "\n  " + p;
        return s;
      }()),
      problems_(std::move(problems)) {}

InterpolationScheme Scenario::scheme(int n) const {
  InterpolationScheme s;
  s.n = n;
  int finite = 0;
  for (const auto& p : fixed_points) {
    s.points.push_back(p);
    finite += p.mult;
  }
  if (2 * n > finite) s.points.push_back({{0.0, 0.0}, true, 2 * n - finite});
  return s;
}

Scenario parse_scenario(const std::string& text, const std::string& name) {
  Scenario sc;
  sc.name = name;
  std::vector<std::string> problems;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  bool have_endpoints = false, have_mu = false, have_n = false, have_grid = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      const auto w = words(line);
      if (w.size() != 2 || w[0] != "mpade-scenario") {
        problems.push_back("line " + std::to_string(lineno) + ": expected header 'mpade-scenario <version>'");
        break;
      }
      if (w[1] != std::to_string(Scenario::kVersion)) {
        problems.push_back("line " + std::to_string(lineno) + ": unsupported scenario version " + w[1]);
        break;
      }
      header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "name") {
        sc.name = val;
      } else if (key == "endpoints") {
        sc.endpoints = parse_doubles(val);
        have_endpoints = true;
      } else if (key == "mu_dot") {
        sc.mu_dot = DensityExpr::parse(val);
        have_mu = true;
      } else if (key == "m_zeros") {
        sc.m_zeros = parse_doubles(val);
      } else if (key == "mode") {
        if (val == "pade") sc.mode = Mode::pade;
        else if (val == "critical") sc.mode = Mode::critical;
        else throw ValidationError("mode must be pade or critical");
      } else if (key == "scheme") {
        sc.fixed_points.clear();
        if (val != "inf") {
          for (const auto& item : split(val, ',')) {
            const auto colon = item.find(':');
            SchemePoint p;
            p.z = parse_complex(item.substr(0, colon));
            p.mult = colon == std::string::npos ? 1 : parse_int(trim(item.substr(colon + 1)));
            if (p.mult < 1) throw ValidationError("multiplicities must be positive");
            sc.fixed_points.push_back(p);
          }
        }
      } else if (key == "n") {
        sc.n_list.clear();
        for (const auto& w : words(val)) sc.n_list.push_back(parse_int(w));
        have_n = true;
      } else if (key == "grid") {
        sc.grid.clear();
        for (const auto& w : words(val)) sc.grid.push_back(parse_complex(w));
        have_grid = true;
      } else if (key == "quad_order") {
        sc.quad_order = parse_int(val);
      } else if (key == "circle_nodes") {
        sc.circle_nodes = parse_int(val);
      } else if (key == "critical.tol") {
        sc.critical_tol = parse_double(val);
      } else if (key == "critical.max_iter") {
        sc.critical_max_iter = parse_int(val);
      } else if (key == "critical.restarts") {
        sc.critical_restarts = parse_int(val);
      } else if (key == "report.gap_jumps") {
        sc.report_gap_jumps = parse_bool(val);
      } else if (key == "tol.max_dev_last") {
        sc.tol.max_dev_last = parse_double(val);
      } else if (key == "tol.require_decrease") {
        sc.tol.require_decrease = parse_bool(val);
      } else if (key == "tol.rate") {
        sc.tol.rate = parse_double(val);
      } else {
        throw ValidationError("unknown key");
      }
    } catch (const ValidationError& e) {
      problems.push_back("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
    }
  }
  if (!header && problems.empty()) problems.push_back("missing header 'mpade-scenario 1'");
  if (header) {
    if (!have_endpoints) problems.push_back("endpoints: required");
    if (!have_mu) problems.push_back("mu_dot: required");
    if (!have_n) problems.push_back("n: required");
    if (!have_grid) problems.push_back("grid: required");
  }
  if (!problems.empty()) throw ScenarioError(problems);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({"cannot read scenario file '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind(".scenario"); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_scenario(ss.str(), stem);
}

void validate_scenario(const Scenario& sc) {
  std::vector<std::string> problems;
  std::optional<IntervalSystem> sys;
  try {
    sys = make_system(sc.endpoints);
  } catch (const ValidationError& e) {
    problems.push_back(std::string("endpoints: ") + e.what());
  }
  if (sys) {
    const int g = sys->genus;
    if (static_cast<int>(sc.m_zeros.size()) != g) {
      problems.push_back("m_zeros: expected " + std::to_string(g) + " zeros (one per gap), got " +
                         std::to_string(sc.m_zeros.size()));
    } else {
      for (int i = 0; i < g; ++i)
        if (!(sc.m_zeros[i] > sys->gap_lo(i) && sc.m_zeros[i] < sys->gap_hi(i)))
          problems.push_back("m_zeros: zero " + std::to_string(i) + " is not inside gap " + std::to_string(i));
    }
    for (int k = 0; k <= g; ++k) {
      const double lo = sys->a(k), hi = sys->b(k);
      for (int j = 0; j <= 400; ++j) {
        const double x = lo + (hi - lo) * j / 400.0;
        const double v = sc.mu_dot(x);
        if (!(std::isfinite(v) && v > 0.0)) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "mu_dot: not positive and finite at x = %.17g", x);
          problems.push_back(buf);
          break;
        }
      }
    }
    const double hull_lo = sys->endpoints.front(), hull_hi = sys->endpoints.back();
    const auto near_hull = [&](cplx z) {
      const double x = std::clamp(z.real(), hull_lo, hull_hi);
      return std::abs(z - x) < 1e-3;
    };
    for (cplx z : sc.grid) {
      if (near_hull(z)) problems.push_back("grid: " + format_complex(z) + " is on or within 1e-3 of the hull of Delta");
      if (sc.mode == Mode::critical && std::abs(z) > 0.0 && near_hull(1.0 / z))
        problems.push_back("grid: " + format_complex(z) + " lies on or near the reflected cuts");
    }
    if (sc.mode == Mode::critical) {
      if (!sys->unit_disk) problems.push_back("mode: critical points need Delta inside (-1, 1)");
      if (!sc.fixed_points.empty()) problems.push_back("scheme: critical mode builds its own interpolation points");
    }
    if (sc.mode == Mode::pade && !sc.n_list.empty()) {
      int finite = 0;
      for (const auto& p : sc.fixed_points) finite += p.mult;
      const int n0 = *std::min_element(sc.n_list.begin(), sc.n_list.end());
      if (2 * n0 < finite)
        problems.push_back("scheme: " + std::to_string(finite) + " finite points exceed 2n for n = " + std::to_string(n0));
      else
        try {
          sc.scheme(n0).validate(*sys);
        } catch (const ValidationError& e) {
          problems.push_back(std::string("scheme: ") + e.what());
        }
    }
  }
  if (sc.n_list.empty()) problems.push_back("n: at least one degree is required");
  for (int n : sc.n_list)
    if (n < 1 || n > 40) problems.push_back("n: degree " + std::to_string(n) + " outside 1..40");
  if (!std::is_sorted(sc.n_list.begin(), sc.n_list.end()) ||
      std::adjacent_find(sc.n_list.begin(), sc.n_list.end()) != sc.n_list.end())
    problems.push_back("n: degrees must be strictly increasing");
  if (sc.grid.empty()) problems.push_back("grid: at least one point is required");
  if (sc.quad_order < 32 || sc.quad_order > 4096) problems.push_back("quad_order: must lie in 32..4096");
  if (sc.circle_nodes < 64) problems.push_back("circle_nodes: must be at least 64");
  if (!(sc.critical_tol > 0.0)) problems.push_back("critical.tol: must be positive");
  if (sc.critical_max_iter < 1) problems.push_back("critical.max_iter: must be positive");
  if (sc.critical_restarts < 0 || sc.critical_restarts > 16) problems.push_back("critical.restarts: must lie in 0..16");
  if (sc.mode != Mode::critical && (sc.critical_restarts > 0 || sc.report_gap_jumps))
    problems.push_back("critical.restarts and report.gap_jumps apply to critical mode only");
  if (sc.tol.rate && !(*sc.tol.rate > 0.0 && *sc.tol.rate < 1.0)) problems.push_back("tol.rate: must lie in (0, 1)");
  if (sc.tol.max_dev_last && !(*sc.tol.max_dev_last > 0.0)) problems.push_back("tol.max_dev_last: must be positive");
  if (!problems.empty()) throw ScenarioError(problems);
}

}  // namespace mpade
