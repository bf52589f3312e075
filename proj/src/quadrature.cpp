#include "spdmean/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "spdmean/errors.hpp"

namespace spdmean {
namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

void normalize(QuadratureRule& rule) {
  double total = 0.0;
  for (double w : rule.w) total += w;
  rule.mass = total;
  for (double& w : rule.w) w /= total;
}

}  // namespace

QuadratureRule QuadratureRule::mirrored() const {
  QuadratureRule out;
  out.s.assign(sc.rbegin(), sc.rend());
  out.sc.assign(s.rbegin(), s.rend());
  out.w.assign(w.rbegin(), w.rend());
  out.mass = mass;
  return out;
}

QuadratureRule power_density_rule(double a, int nodes) {
  if (!(a > -1.0 && a < 1.0)) fail(ErrorKind::kMeasure, "power density exponent must lie in (-1, 1)");
  if (nodes < 2) fail(ErrorKind::kMeasure, "quadrature needs at least two nodes");
  constexpr double pi = std::numbers::pi;
  // Truncate where the integrand has decayed below e^-40 at both ends.
  const double u_max = std::asinh(40.0 / (pi * (1.0 - std::abs(a))));
  const double h = 2.0 * u_max / (nodes - 1);
  const double scale = a == 0.0 ? 1.0 : std::sin(a * pi) / (a * pi);

  QuadratureRule rule;
  rule.s.reserve(static_cast<std::size_t>(nodes));
  rule.sc.reserve(static_cast<std::size_t>(nodes));
  rule.w.reserve(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) {
    const double u = -u_max + k * h;
    const double z = pi * std::sinh(u);
    const double log_s = -softplus(-z);
    const double log_sc = -softplus(z);
    const double log_w = std::log(h * pi * std::cosh(u)) + log_s + log_sc + a * (log_s - log_sc);
    rule.s.push_back(std::exp(log_s));
    rule.sc.push_back(std::exp(log_sc));
    rule.w.push_back(scale * std::exp(log_w));
  }
  normalize(rule);
  return rule;
}

QuadratureRule gauss_legendre(int nodes) {
  if (nodes < 1) fail(ErrorKind::kMeasure, "quadrature needs at least one node");
  const int n = nodes;
  // Returns P_n(x) and P_n'(x).
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };

  QuadratureRule rule;
  rule.s.resize(static_cast<std::size_t>(n));
  rule.sc.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.s[hi] = 0.5 * (1.0 + x);
    rule.sc[hi] = 0.5 * (1.0 - x);
    rule.s[lo] = rule.sc[hi];
    rule.sc[lo] = rule.s[hi];
    rule.w[lo] = w;
    rule.w[hi] = w;
  }
  if (n % 2 == 1) {
    const auto mid = static_cast<std::size_t>(n / 2);
    rule.s[mid] = 0.5;
    rule.sc[mid] = 0.5;
  }
  rule.mass = 1.0;
  return rule;
}

}  // namespace spdmean
