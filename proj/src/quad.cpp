#include "mpade/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "mpade/errors.hpp"

namespace mpade {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::log_endpoint;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

void require_finite(cplx v, double x, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": integrand is not finite at node x = " << x;
    throw NumericalError("quad", os.str());
  }
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache.emplace(n, compute_gauss_legendre(n)).first->second;
}

double Panel::others_root(double y) const {
  double p = 1.0;
  for (double e : others) p *= std::sqrt(std::abs(y - e));
  return p;
}

double Panel::density(double y) const { return 1.0 / (sign * others_root(y)); }

void graded_theta_rule(int order, bool grade_lo, bool grade_hi, std::vector<double>& theta,
                       std::vector<double>& weight) {
  constexpr int kPts = 16;
  constexpr int kLevels = 18;
  constexpr double kRatio = 0.15;
  const QuadratureRule gl = gauss_legendre(kPts);
  const int m = std::max(4, order / kPts);
  const double h = kPi / m;
  theta.clear();
  weight.clear();
  auto add = [&](double t0, double t1) {
    const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (int j = 0; j < kPts; ++j) {
      theta.push_back(mid + half * gl.nodes[j]);
      weight.push_back(half * gl.weights[j]);
    }
  };
  // theta near 0 is the hi end of the interval, theta near pi the lo end.
  for (int p = 0; p < m; ++p) {
    const double t0 = p * h, t1 = (p + 1) * h;
    if (p == 0 && grade_hi) {
      double right = t1;
      for (int l = 0; l < kLevels; ++l) {
        const double left = right * kRatio;
        add(left, right);
        right = left;
      }
      add(0.0, right);
    } else if (p == m - 1 && grade_lo) {
      double gap = h;
      for (int l = 0; l < kLevels; ++l) {
        const double inner = gap * kRatio;
        add(kPi - gap, kPi - inner);
        gap = inner;
      }
      add(kPi - gap, kPi);
    } else {
      add(t0, t1);
    }
  }
}

Quadrature::Quadrature(IntervalSystem sys, int order) : sys_(std::move(sys)), order_(order) {
  if (order < 8) throw ValidationError("quadrature order must be at least 8");
  for (int k = 0; k < sys_.bands(); ++k) bands_.push_back(make_panel(true, k, sys_.a(k), sys_.b(k)));
  for (int i = 0; i < sys_.genus; ++i) gaps_.push_back(make_panel(false, i, sys_.gap_lo(i), sys_.gap_hi(i)));
}

Panel Quadrature::make_panel(bool band, int index, double lo, double hi) const {
  Panel p;
  p.is_band = band;
  p.index = index;
  p.lo = lo;
  p.hi = hi;
  p.c = 0.5 * (lo + hi);
  p.r = 0.5 * (hi - lo);
  p.sign = band ? sys_.band_sign(index) : sys_.gap_sign(index);
  for (double e : sys_.endpoints)
    if (e != lo && e != hi) p.others.push_back(e);
  const int n = order_;
  p.theta.resize(n);
  p.weight.assign(n, kPi / n);
  p.x.resize(n);
  p.dens.resize(n);
  for (int j = 0; j < n; ++j) {
    p.theta[j] = (2.0 * j + 1.0) * kPi / (2.0 * n);
    p.x[j] = p.c + p.r * std::cos(p.theta[j]);
    p.dens[j] = p.density(p.x[j]);
  }
  return p;
}

Panel Quadrature::graded_band(int k, bool grade_lo, bool grade_hi) const {
  Panel p = bands_.at(k);
  graded_theta_rule(order_, grade_lo, grade_hi, p.theta, p.weight);
  p.x.resize(p.theta.size());
  p.dens.resize(p.theta.size());
  for (std::size_t j = 0; j < p.theta.size(); ++j) {
    p.x[j] = p.c + p.r * std::cos(p.theta[j]);
    p.dens[j] = p.density(p.x[j]);
  }
  return p;
}

cplx panel_sum(const Panel& p, const ComplexFn& F) {
  cplx s(0.0, 0.0);
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const cplx v = F(p.x[j]);
    require_finite(v, p.x[j], "panel_sum");
    s += p.weight[j] * v;
  }
  return s;
}

cplx panel_kernel(const Panel& p, cplx z, Side side) {
  // int_0^pi dtheta / (c + r cos - z) = -pi / s(z), s = sqrt(z - lo) sqrt(z - hi).
  if (z.imag() == 0.0 && z.real() > p.lo && z.real() < p.hi) {
    if (side == Side::none) throw ValidationError("Cauchy kernel on the interval requires a side");
    const double x = z.real();
    const double root = std::sqrt((x - p.lo) * (p.hi - x));
    const cplx s(0.0, side == Side::plus ? root : -root);
    return -kPi / s;
  }
  const cplx s = std::sqrt(z - p.lo) * std::sqrt(z - p.hi);
  return -kPi / s;
}

cplx panel_cauchy(const Panel& p, const ComplexFn& F, cplx z, Side side, const std::vector<cplx>* at_nodes) {
  const auto node = [&](std::size_t j) { return at_nodes ? (*at_nodes)[j] : F(p.x[j]); };
  const double xr = std::clamp(z.real(), p.lo, p.hi);
  const double dist = std::abs(z - xr);
  const double spacing = kPi * p.r / static_cast<double>(p.x.size());
  const bool inside = z.imag() == 0.0 && z.real() > p.lo && z.real() < p.hi;
  if (inside && side == Side::none) throw ValidationError("Cauchy integral on the interval requires a side");
  if (!inside && dist >= 5.0 * spacing) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      const cplx v = node(j);
      require_finite(v, p.x[j], "cauchy");
      s += p.weight[j] * v / (p.x[j] - z);
    }
    return s;
  }
  const cplx f0 = F(xr);
  if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag())) {
    // Log-singular endpoint: the graded rule resolves the kernel without subtraction.
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < p.x.size(); ++j) s += p.weight[j] * node(j) / (p.x[j] - z);
    return s;
  }
  const double d = 1e-5 * p.r;
  cplx f1;
  if (xr - d < p.lo)
    f1 = (F(xr + d) - f0) / d;
  else if (xr + d > p.hi)
    f1 = (f0 - F(xr - d)) / d;
  else
    f1 = (F(xr + d) - F(xr - d)) / (2.0 * d);
  if (!std::isfinite(f1.real()) || !std::isfinite(f1.imag())) f1 = 0.0;
  const cplx C = panel_kernel(p, z, side);
  cplx s = f0 * C + f1 * (kPi + (z - xr) * C);
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const double x = p.x[j];
    const cplx diff = x - z;
    if (std::abs(diff) == 0.0) continue;
    const cplx v = node(j);
    require_finite(v, x, "cauchy");
    s += p.weight[j] * (v - f0 - f1 * (x - xr)) / diff;
  }
  return s;
}

cplx Quadrature::band_integral(int k, const ComplexFn& h, Side side) const {
  const Panel& p = bands_.at(k);
  cplx s(0.0, 0.0);
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const cplx v = h(p.x[j]);
    require_finite(v, p.x[j], "band_integral");
    s += p.weight[j] * v * p.dens[j];
  }
  const cplx f = cplx(0.0, -1.0) * s;
  return side == Side::minus ? -f : f;
}

cplx Quadrature::band_integral(const ComplexFn& h, Side side) const {
  cplx s(0.0, 0.0);
  for (int k = 0; k < sys_.bands(); ++k) s += band_integral(k, h, side);
  return s;
}

double Quadrature::band_integral_imag(const RealFn& h) const {
  double s = 0.0;
  for (const Panel& p : bands_)
    for (std::size_t j = 0; j < p.x.size(); ++j) s += p.weight[j] * h(p.x[j]) * p.dens[j];
  return -s;
}

double Quadrature::gap_integral(int i, const RealFn& h) const {
  if (i < 0 || i >= sys_.genus) {
    std::ostringstream os;
    os << "gap index " << i << " out of range [0, " << sys_.genus << ")";
    throw ValidationError(os.str());
  }
  const Panel& p = gaps_[i];
  double s = 0.0;
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const double v = h(p.x[j]);
    require_finite(v, p.x[j], "gap_integral");
    s += p.weight[j] * v * p.dens[j];
  }
  return s;
}

cplx Quadrature::gap_integral_c(int i, const ComplexFn& h) const {
  if (i < 0 || i >= sys_.genus) throw ValidationError("gap index out of range");
  const Panel& p = gaps_[i];
  cplx s(0.0, 0.0);
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const cplx v = h(p.x[j]);
    require_finite(v, p.x[j], "gap_integral");
    s += p.weight[j] * v * p.dens[j];
  }
  return s;
}

cplx Quadrature::cauchy_band(const ComplexFn& h, cplx z, Side side) const {
  cplx s(0.0, 0.0);
  for (const Panel& p : bands_) {
    const ComplexFn F = [&](double x) { return h(x) * p.density(x); };
    s += panel_cauchy(p, F, z, side);
  }
  return cplx(0.0, -1.0) * s;
}

cplx Quadrature::cauchy_gap(int i, const ComplexFn& h, cplx z, Side side) const {
  if (i < 0 || i >= sys_.genus) throw ValidationError("gap index out of range");
  const Panel& p = gaps_[i];
  const ComplexFn F = [&](double x) { return h(x) * p.density(x); };
  return panel_cauchy(p, F, z, side);
}

double Quadrature::log_endpoint_integral(const RealFn& h, const std::vector<EndpointZero>& zeros,
                                         const RealFn& g) const {
  for (const auto& z : zeros)
    if (!sys_.is_endpoint(z.e, 1e-14)) throw ValidationError("declared zero is not an interval endpoint");
  double total = 0.0;
  for (const Panel& p : bands_) {
    std::vector<EndpointZero> local;
    for (const auto& z : zeros)
      if (std::abs(z.e - p.lo) < 1e-14 || std::abs(z.e - p.hi) < 1e-14) local.push_back(z);
    const auto G = [&](double x) { return g(x) / p.others_root(x); };
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      const double x = p.x[j];
      const double hv = h(x);
      if (!(hv > 0.0) || !std::isfinite(hv)) {
        std::ostringstream os;
        os.precision(17);
        os << "log integrand must be positive inside the bands; h(" << x << ") = " << hv;
        throw ValidationError(os.str());
      }
      double lg = std::log(hv);
      for (const auto& z : local) lg -= z.alpha * std::log(std::abs(x - z.e));
      total += p.weight[j] * lg * G(x);
    }
    for (const auto& z : local) {
      const bool at_lo = std::abs(z.e - p.lo) < 1e-14;
      std::vector<double> th, wt;
      graded_theta_rule(order_, at_lo, !at_lo, th, wt);
      const double ge = G(z.e);
      double s = 0.0;
      for (std::size_t j = 0; j < th.size(); ++j) {
        const double x = p.c + p.r * std::cos(th[j]);
        const double half = 0.5 * th[j];
        const double dist = at_lo ? 2.0 * p.r * std::cos(half) * std::cos(half)
                                  : 2.0 * p.r * std::sin(half) * std::sin(half);
        if (dist <= 0.0) continue;
        s += wt[j] * std::log(dist) * (G(x) - ge);
      }
      total += z.alpha * (s + ge * kPi * std::log(p.r / 2.0));
    }
  }
  return total;
}

double circle_mean(const std::function<cplx(cplx)>& fn, int n_nodes) {
  if (n_nodes < 1) throw ValidationError("circle node count must be positive");
  double s = 0.0;
  for (int j = 0; j < n_nodes; ++j) {
    const double t = 2.0 * kPi * j / n_nodes;
    s += std::norm(fn(std::polar(1.0, t)));
  }
  return s / n_nodes;
}

}  // namespace mpade
