#include "spdmean/thompson.hpp"

#include <algorithm>
#include <cmath>

namespace spdmean {
namespace {

// log((b e^{3r} + a) / (b e^{r} + a)) without overflowing for large r.
double log_ratio_3r_r(double a, double b, double r) {
  if (b == 0.0) return 0.0;
  if (a == 0.0) return 2.0 * r;
  const double lb = std::log(b);
  const double la = std::log(a);
  auto log_sum = [](double x, double y) {
    const double m = std::max(x, y);
    return m + std::log1p(std::exp(std::min(x, y) - m));
  };
  return log_sum(lb + 3.0 * r, la) - log_sum(lb + r, la);
}

void require_positive_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::kDomain, "radius must be positive and finite");
}

void require_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorKind::kDomain, "t must lie in (0, 1]");
}

}  // namespace

double m_ratio(const SpdMatrix& a, const SpdMatrix& b) {
  const Vector ev = relative_eigenvalues(a, b);
  return ev(ev.size() - 1);
}

double d_inf(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  if (a.dense() == b.dense()) return 0.0;
  const Vector ev = relative_eigenvalues(a, b);
  const double hi = std::log(ev(ev.size() - 1));
  const double lo = -std::log(ev(0));
  return std::max({hi, lo, 0.0});
}

double contraction_coeff_arith(double a, double b, double r) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorKind::kDomain, "coefficients must be positive and finite");
  }
  require_positive_radius(r);
  return log_ratio_3r_r(a, b, r) / (2.0 * r);
}

double contraction_coeff_mst(double s, double t, double r) {
  if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::kDomain, "s must lie in [0, 1]");
  require_t(t);
  require_positive_radius(r);
  const double rho1 = log_ratio_3r_r(t, 1.0 - t, r) / (2.0 * r);
  const double u = t + s * (1.0 - t);
  const double a = s * (1.0 - t) / u;
  const double b = t / u;
  if (a == 0.0) return rho1;
  const double num = b * std::exp(-r) + a * std::exp(2.0 * r * (1.0 - rho1));
  const double den = b * std::exp(-r) + a;
  return rho1 + std::log(num / den) / (2.0 * r);
}

double contraction_coeff_uniform(double t, double r) {
  require_t(t);
  require_positive_radius(r);
  const double rho1 = log_ratio_3r_r(t, 1.0 - t, r) / (2.0 * r);
  if (t == 1.0) return 0.0;
  const double num = t * std::exp(-r) + (1.0 - t) * std::exp(2.0 * r * (1.0 - rho1));
  const double den = t * std::exp(-r) + (1.0 - t);
  return rho1 + std::log(num / den) / (2.0 * r);
}

}  // namespace spdmean
