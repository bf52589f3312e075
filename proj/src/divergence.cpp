#include "spdmean/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spdmean/random.hpp"

namespace spdmean {
namespace {

constexpr double kEndpoint = 1e-8;
// Largest trial step, as a Thompson distance from the current iterate.
constexpr double kMaxStep = 4.0;

// Per-eigenvalue LD^s contribution for c an eigenvalue of X^{-1/2} A X^{-1/2};
// sc = 1 - s is passed separately for accuracy near s = 1.
double ld_term(double s, double sc, double c) {
  const double lc = std::log(c);
  if (s < kEndpoint) return 1.0 / c - 1.0 + lc;
  if (sc < kEndpoint) return c - 1.0 - lc;
  if (s <= 0.5) return (s * lc + std::log1p(s * (1.0 / c - 1.0))) / (s * sc);
  return (std::log1p(sc * (c - 1.0)) - sc * lc) / (s * sc);
}

double ld_sum(const Vector& c, double s, double sc) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) acc += ld_term(s, sc, c(i));
  return acc;
}

}  // namespace

void RgdConfig::validate() const {
  if (!(step0 > 0.0)) fail(ErrorKind::kDomain, "step0 must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0)) fail(ErrorKind::kDomain, "backtrack must lie in (0, 1)");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) fail(ErrorKind::kDomain, "armijo_c must lie in (0, 1)");
  if (!(grad_tol > 0.0)) fail(ErrorKind::kDomain, "grad_tol must be positive");
  if (max_iters <= 0) fail(ErrorKind::kDomain, "max_iters must be positive");
}

double ld_s(const SpdMatrix& x, const SpdMatrix& a, double s) {
  if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::kDomain, "s must lie in [0, 1]");
  return ld_sum(relative_eigenvalues(a, x), s, 1.0 - s);
}

double objective(const SpdMatrix& x, const PMeasure& mu) {
  require_same_dim(x, mu.atoms().front().matrix);
  double total = 0.0;
  for (const auto& atom : mu.atoms()) {
    const Vector c = relative_eigenvalues(atom.matrix, x);
    const QuadratureRule& rule = atom.nu.rule();
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) inner += rule.w[j] * ld_sum(c, rule.s[j], rule.sc[j]);
    total += atom.weight * inner;
  }
  return total;
}

SymMatrix riemannian_grad(const SpdMatrix& x, const PMeasure& mu) { return -karcher_residual(x, mu); }

SpdMatrix exp_map(const SpdMatrix& x, const SymMatrix& v) {
  require_same_dim(x, v);
  const SpdRoots r = roots(x);
  const SpdMatrix e = exp(SymMatrix(r.inv_sqrt * v.dense() * r.inv_sqrt));
  return assume_spd(r.sqrt * e.dense() * r.sqrt);
}

SolverReport rgd_minimize(const PMeasure& mu, const RgdConfig& cfg) {
  cfg.validate();
  const std::vector<WeightedMatrix> sigma = mu.sigma();
  SpdMatrix x = weighted_arith(sigma);
  double f = objective(x, mu);
  SymMatrix grad = riemannian_grad(x, mu);
  double step = 0.0;
  int it = 0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  while (grad.frobenius() > cfg.grad_tol) {
    if (it >= cfg.max_iters) {
      throw NonConvergence("gradient descent stopped at ||grad|| = " + std::to_string(grad.frobenius()), it, step);
    }
    ++it;
    const SpdRoots r = roots(x);
    // Descent direction in X-normalized coordinates; its squared norm is ||grad||_X^2.
    const Dense d = -(r.inv_sqrt * grad.dense() * r.inv_sqrt);
    const double gnorm2 = d.squaredNorm();
    const SpectralDecomposition dd = spectral(SymMatrix(d));
    const Vector& lam = dd.eigenvalues;
    const double d_max = lam.cwiseAbs().maxCoeff();

    bool accepted = false;
    double alpha = std::min(cfg.step0, kMaxStep / d_max);
    for (int k = 0; k < 80 && !accepted; ++k) {
      std::vector<double> e(static_cast<std::size_t>(lam.size()));
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(alpha * lam(static_cast<Eigen::Index>(i)));
      const SpdMatrix trial = assume_spd(r.sqrt * compose(dd.eigenvectors, e) * r.sqrt);
      const double f_trial = objective(trial, mu);
      const double decrease = cfg.armijo_c * alpha * gnorm2;
      bool ok = f_trial <= f - decrease;
      double next = alpha * cfg.backtrack;
      SymMatrix g_trial;
      if (!ok && decrease < 4.0 * eps * std::abs(f)) {
        // Objective differences are below rounding. F is geodesically convex, so a
        // nonpositive slope at alpha certifies descent over the whole step.
        g_trial = riemannian_grad(trial, mu);
        const Dense gq = dd.eigenvectors.transpose() * (r.inv_sqrt * g_trial.dense() * r.inv_sqrt) * dd.eigenvectors;
        double slope = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) slope += lam(i) * gq(i, i) / e[static_cast<std::size_t>(i)];
        ok = slope <= 0.0;
        // Secant estimate of the slope's zero between 0 and alpha.
        if (!ok) next = std::clamp(alpha * gnorm2 / (gnorm2 + slope), 0.1 * alpha, 0.9 * alpha);
      }
      if (ok) {
        x = trial;
        f = f_trial;
        grad = g_trial.dim() > 0 ? g_trial : riemannian_grad(x, mu);
        step = alpha * d_max;
        accepted = true;
      }
      alpha = next;
    }
    if (!accepted) {
      throw NonConvergence("line search failed at ||grad|| = " + std::to_string(grad.frobenius()), it, step);
    }
  }

  SolverReport report;
  report.mean = x;
  report.iterations = it;
  report.final_step = step;
  report.residual_norm = grad.frobenius();
  return report;
}

ConvexityResult geodesic_convexity_check(const PMeasure& mu, int trials, std::uint64_t seed) {
  Rng rng(seed);
  ConvexityResult result;
  const int n = mu.dim();
  for (int trial = 0; trial < trials; ++trial) {
    const SpdMatrix g0 = random_spd(rng, n);
    const SpdMatrix g1 = random_spd(rng, n);
    const double f0 = objective(g0, mu);
    const double f1 = objective(g1, mu);
    for (double tau : {0.25, 0.5, 0.75}) {
      const double chord = (1.0 - tau) * f0 + tau * f1;
      const double excess = objective(geom_mean_t(g0, g1, tau), mu) - chord;
      result.worst_excess = std::max(result.worst_excess, excess);
      if (excess > 1e-12 * (1.0 + std::abs(chord))) {
        result.passed = false;
        std::ostringstream line;
        line.precision(17);
        line << "trial " << trial << " tau " << tau << " excess " << excess << " chord " << chord;
        result.log.push_back(line.str());
      }
    }
    ++result.trials;
  }
  return result;
}

}  // namespace spdmean
