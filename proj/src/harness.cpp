#include "mpade/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>

#include "json.hpp"

#include "mpade/errors.hpp"

namespace mpade {

// ---------------------------------------------------------------- assemblies

PadeAsymptotics::PadeAsymptotics(const Bases& b, const InterpolationScheme& scheme) : b_(&b) {
  r = pade(*b.f, scheme);
  psi_ = std::make_unique<Psi>(*b.quad, b.gb, scheme);
  omega = psi_->omega();
  const int g = b.system().genus;
  Vn = b.ctx.V;
  for (int i = 0; i < g; ++i) Vn(i) += b.S->constants()[i] + omega[i];
  T_ = std::make_unique<ThetaQuotient>(*b.surface, b.ctx, Vn);
}

cplx PadeAsymptotics::psi(cplx z) const { return (*psi_)(z); }

cplx PadeAsymptotics::rhs(cplx z) const {
  const cplx S = (*b_->S)(z);
  return 2.0 * T_->T(z) * (*psi_)(z) * b_->density.m()(z) * S * S / w_of(b_->system(), z);
}

cplx PadeAsymptotics::error(cplx z) const { return pade_error(*b_->f, r, z); }

CriticalAsymptotics::CriticalAsymptotics(const Bases& b, RationalApproximant rr) : r(std::move(rr)), b_(&b) {
  if (!b.cb) throw ValidationError("the critical-point assembly needs Delta inside (-1, 1)");
  dd = divisor_data(b, r);
  D = std::make_unique<CondenserD>(*b.quad, *b.cb, dd.lambda);
}

cplx CriticalAsymptotics::rhs(cplx z) const {
  const cplx Dz = (*D)(z), Bz = dd.blaschke(z);
  const cplx ratio = b_->rho_c / phi_map(*b_->quad, *b_->cb, z);
  return 2.0 * D->G() * dd.m_n(z) / (Bz * Bz) * Dz * Dz / w_of(b_->system(), z) * std::pow(ratio, 2 * (r.n - dd.d_n));
}

cplx CriticalAsymptotics::error(cplx z) const { return pade_error(*b_->f, r, z); }

cplx rhs_pade(const Bases& b, const InterpolationScheme& scheme, cplx z) { return PadeAsymptotics(b, scheme).rhs(z); }

cplx rhs_critical(const Bases& b, const RationalApproximant& r, cplx z) { return CriticalAsymptotics(b, r).rhs(z); }

// ---------------------------------------------------------------- threading

int thread_count() {
  const char* env = std::getenv("MPADE_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n > 0) return n;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int T = std::min(thread_count(), count);
  if (T <= 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&] {
      for (int k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------- runs

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

bool RatioReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

RatioReport run_scenario(const Scenario& sc) {
  validate_scenario(sc);
  RatioReport rep;
  rep.scenario = sc;
  Density dens{sc.mu_dot, sc.m_zeros};
  const Bases b(sc.endpoints, dens, sc.quad_order);
  rep.c_mu = b.S->constants();
  for (double& c : rep.c_mu) c += 0.0;  // no "-0" in the report
  rep.rho = b.rho_c;
  const int N = static_cast<int>(sc.n_list.size()), P = static_cast<int>(sc.grid.size());
  rep.per_n.resize(N);
  rep.rows.resize(static_cast<std::size_t>(N) * P);

  parallel_for(N, [&](int k) {
    const int n = sc.n_list[k];
    NSummary& s = rep.per_n[k];
    s.n = n;
    const auto fill = [&](const auto& A) {
      for (int p = 0; p < P; ++p) {
        RatioRow& row = rep.rows[static_cast<std::size_t>(k) * P + p];
        row.n = n;
        row.z = sc.grid[p];
        row.err = A.error(row.z);
        row.rhs = A.rhs(row.z);
        row.ratio = row.err / row.rhs;
        row.dev = std::abs(row.ratio - 1.0);
        s.max_dev = std::max(s.max_dev, row.dev);
      }
    };
    if (sc.mode == Mode::pade) {
      const PadeAsymptotics A(b, sc.scheme(n));
      fill(A);
      s.ortho_residual = A.r.ortho_residual;
      s.omega = A.omega;
      for (int p = 0; p < P; ++p) {
        s.log_err.push_back(std::log(std::abs(A.error(sc.grid[p]))));
        s.log_psi.push_back(std::log(std::abs(A.psi(sc.grid[p]))));
      }
    } else {
      CriticalOptions opt;
      opt.tol = sc.critical_tol;
      opt.max_iter = sc.critical_max_iter;
      std::vector<RationalApproximant> cps = critical_points(*b.f, n, sc.critical_restarts, opt);
      for (std::size_t c = 1; c < cps.size(); ++c) s.alt_l2.push_back(l2_error(*b.f, cps[c], sc.circle_nodes));
      const CriticalAsymptotics A(b, std::move(cps.front()));
      fill(A);
      s.ortho_residual = A.r.ortho_residual;
      s.iterations = A.r.iterations;
      s.omega = A.dd.omega;
      s.d_n = A.dd.d_n;
      s.G = A.D->G();
      for (const auto& pt : A.dd.divisor.points) s.divisor.push_back(pt.z.real());
      s.l2 = l2_error(*b.f, A.r, sc.circle_nodes);
      if (sc.report_gap_jumps) {
        const IntervalSystem& sys = b.system();
        const int p = n - s.d_n;
        for (int i = 0; i < sys.genus; ++i) {
          const double x = 0.5 * (sys.gap_lo(i) + sys.gap_hi(i));
          const cplx jd = (*A.D)(x, Side::plus) / (*A.D)(x, Side::minus);
          const cplx jp = phi_map(*b.quad, *b.cb, x, Side::plus) / phi_map(*b.quad, *b.cb, x, Side::minus);
          s.gap_jumps.push_back(std::arg(jd / std::pow(jp, p)) / (2.0 * std::numbers::pi) + 0.0);
        }
      }
    }
  });

  // tolerance checks
  const Tolerances& tol = sc.tol;
  if (tol.max_dev_last) {
    const double v = rep.per_n.back().max_dev;
    rep.checks.push_back({"max_dev_last", v, *tol.max_dev_last, v <= *tol.max_dev_last});
  }
  if (tol.require_decrease) {
    const double first = rep.per_n.front().max_dev, last = rep.per_n.back().max_dev;
    rep.checks.push_back({"decrease", last, first, N > 1 && last < first});
  }
  if (sc.mode == Mode::critical) {
    // slope of log ||f - r_n|| over the degrees sharing the final d_n
    std::vector<double> xs, ys;
    for (const auto& s : rep.per_n)
      if (s.d_n == rep.per_n.back().d_n) {
        xs.push_back(s.n);
        ys.push_back(std::log(s.l2));
      }
    rep.slope_target = 2.0 * std::log(rep.rho);
    rep.slope = xs.size() >= 2 ? regression_slope(xs, ys) : 0.0;
    if (tol.rate) {
      const double rel = xs.size() >= 2 ? std::abs(rep.slope / rep.slope_target - 1.0) : INFINITY;
      rep.checks.push_back({"rate", rel, *tol.rate, rel <= *tol.rate});
    }
  } else if (N >= 2) {
    // log|error| against sum log|psi_n|, worst grid point
    std::vector<double> xs;
    for (int n : sc.n_list) xs.push_back(n);
    double worst = 0.0;
    for (int p = 0; p < P; ++p) {
      std::vector<double> le, lp;
      for (const auto& s : rep.per_n) {
        le.push_back(s.log_err[p]);
        lp.push_back(s.log_psi[p]);
      }
      const double se = regression_slope(xs, le), sp = regression_slope(xs, lp);
      if (p == 0) {
        rep.slope = se;
        rep.slope_target = sp;
      }
      worst = std::max(worst, std::abs(se / sp - 1.0));
    }
    if (tol.rate) rep.checks.push_back({"rate", worst, *tol.rate, worst <= *tol.rate});
  }
  return rep;
}

// ---------------------------------------------------------------- output

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + num(v[k]);
  return s;
}

std::string header(const RatioReport& rep, const char* table) {
  const Scenario& sc = rep.scenario;
  nlohmann::ordered_json j;
  j["format"] = "mpade-ratio-report";
  j["version"] = 1;
  j["table"] = table;
  j["scenario"] = sc.name;
  j["mode"] = sc.mode == Mode::pade ? "pade" : "critical";
  j["endpoints"] = sc.endpoints;
  j["mu_dot"] = sc.mu_dot.text;
  j["m_zeros"] = sc.m_zeros;
  j["n"] = sc.n_list;
  j["quad_order"] = sc.quad_order;
  j["circle_nodes"] = sc.circle_nodes;
  if (sc.mode == Mode::critical) j["critical_restarts"] = sc.critical_restarts;
  j["c_mu"] = rep.c_mu;
  j["rho"] = rep.rho;
  j["slope"] = rep.slope;
  j["slope_target"] = rep.slope_target;
  return "# " + j.dump() + "\n";
}

}  // namespace

std::string report_csv(const RatioReport& rep) {
  const bool crit = rep.scenario.mode == Mode::critical;
  std::string out = header(rep, "ratios");
  out += "n,z_re,z_im,abs_err,abs_rhs,ratio_re,ratio_im,dev";
  if (crit) out += ",d_n,G_lambda,divisor";
  out += "\n";
  const std::size_t P = rep.scenario.grid.size();
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const RatioRow& r = rep.rows[k];
    out += std::to_string(r.n) + "," + num(r.z.real()) + "," + num(r.z.imag()) + "," + num(std::abs(r.err)) + "," +
           num(std::abs(r.rhs)) + "," + num(r.ratio.real()) + "," + num(r.ratio.imag()) + "," + num(r.dev);
    if (crit) {
      const NSummary& s = rep.per_n[k / P];
      out += "," + std::to_string(s.d_n) + "," + num(s.G) + "," + join(s.divisor);
    }
    out += "\n";
  }
  return out;
}

std::string summary_csv(const RatioReport& rep) {
  const Scenario& sc = rep.scenario;
  const bool crit = sc.mode == Mode::critical;
  std::string out = header(rep, "summary");
  out += "n,max_dev,ortho_residual,omega,d_n,G_lambda,divisor,l2_error,iterations";
  if (crit) out += ",alt_l2";
  if (crit && sc.report_gap_jumps) out += ",gap_jumps";
  out += "\n";
  for (const NSummary& s : rep.per_n) {
    out += std::to_string(s.n) + "," + num(s.max_dev) + "," + num(s.ortho_residual) + "," + join(s.omega) + "," +
           std::to_string(s.d_n) + "," + num(s.G) + "," + join(s.divisor) + "," + num(s.l2) + "," +
           std::to_string(s.iterations);
    if (crit) out += "," + join(s.alt_l2);
    if (crit && sc.report_gap_jumps) out += "," + join(s.gap_jumps);
    out += "\n";
  }
  return out;
}

std::string write_report(const RatioReport& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string main = (std::filesystem::path(dir) / (rep.scenario.name + ".csv")).string();
  const std::string summ = (std::filesystem::path(dir) / (rep.scenario.name + ".summary.csv")).string();
  for (const auto& [path, body] : {std::pair{main, report_csv(rep)}, std::pair{summ, summary_csv(rep)}}) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw std::runtime_error("cannot write " + path);
    o << body;
  }
  return main;
}

}  // namespace mpade
