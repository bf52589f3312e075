#include "spdmean/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "spdmean/divergence.hpp"
#include "spdmean/random.hpp"
#include "spdmean/solver.hpp"
#include "spdmean/thompson.hpp"

namespace spdmean {
namespace {

class Tally {
 public:
  Tally(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  // Records one trial; `err` is the error measure, `ok` the verdict.
  void record(const std::string& name, bool ok, double err = 0.0) {
    auto it = std::find_if(out_.begin(), out_.end(),
                           [&](const CheckResult& c) { return c.suite == suite_ && c.name == name; });
    if (it == out_.end()) {
      out_.push_back({suite_, name, 0, 0, 0.0});
      it = out_.end() - 1;
    }
    (ok ? it->passed : it->failed) += 1;
    if (std::isfinite(err)) it->worst = std::max(it->worst, err);
  }

  // Runs `body`, counting any library error as a failure of `name`.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error&) {
      record(name, false, INFINITY);
    }
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

SMeasure pick_nu(Rng& rng, int trial) {
  switch (trial % 4) {
    case 0: return SMeasure::lebesgue();
    case 1: return SMeasure::dirac(uniform(rng, 0.0, 1.0));
    case 2: return SMeasure::power(uniform(rng, 0.2, 0.8));
    default: {
      const double w = uniform(rng, 0.2, 0.8);
      return SMeasure::atoms({{uniform(rng, 0.0, 0.5), w}, {uniform(rng, 0.5, 1.0), 1.0 - w}});
    }
  }
}

PMeasure random_mu(Rng& rng, int n, int trial) {
  const SMeasure nu = pick_nu(rng, trial);
  const std::vector<WeightedMatrix> sigma = random_sigma(rng, n, 2 + trial % 3);
  return product_measure(nu, sigma);
}

// X = A^{1/2} exp(H) A^{1/2} with ||H||_2 = radius, so d_inf(X, A) = radius.
SpdMatrix on_ball(Rng& rng, const SpdMatrix& a, double radius) {
  const SymMatrix g = random_symmetric(rng, a.dim());
  const double norm = spectral(g).eigenvalues.cwiseAbs().maxCoeff();
  return congruence(sqrt(a).dense(), exp((radius / norm) * g));
}

void thompson_suite(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  Tally tally("thompson", out);
  Rng rng(opt.seed);
  const int n = opt.dim;
  for (int trial = 0; trial < opt.trials; ++trial) {
    const SpdMatrix a = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix b = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix c = random_spd(rng, n, 0.1, 10.0);
    const double d = d_inf(a, b);

    const double scale = uniform(rng, 0.1, 10.0);
    const double e1 = std::abs(d_inf(assume_spd(scale * a.dense()), assume_spd(scale * b.dense())) - d);
    tally.record("scaling", e1 <= 1e-10, e1);

    const double e2 = std::abs(d_inf(inverse(a), inverse(b)) - d);
    tally.record("inversion", e2 <= 1e-10, e2);

    Dense m = random_orthogonal(rng, n);
    for (int i = 0; i < n; ++i) m.col(i) *= uniform(rng, 0.5, 2.0);
    const double e3 = std::abs(d_inf(congruence(m, a), congruence(m, b)) - d);
    tally.record("congruence", e3 <= 1e-10, e3);

    const SpdMatrix a2 = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix b2 = random_spd(rng, n, 0.1, 10.0);
    const double t1 = uniform(rng, 0.1, 2.0);
    const double t2 = uniform(rng, 0.1, 2.0);
    const double lhs = d_inf(assume_spd(t1 * a.dense() + t2 * a2.dense()), assume_spd(t1 * b.dense() + t2 * b2.dense()));
    const double rhs = std::max(d, d_inf(a2, b2));
    tally.record("sum_bound", lhs <= rhs + 1e-10, lhs - rhs);

    const bool sandwich = loewner_leq(assume_spd(std::exp(-d) * b.dense()), a) &&
                          loewner_leq(a, assume_spd(std::exp(d) * b.dense()));
    tally.record("order_sandwich", sandwich);

    const double e4 = std::abs(d_inf(b, a) - d);
    tally.record("symmetry", e4 <= 1e-10, e4);
    const double tri = d - d_inf(a, c) - d_inf(c, b);
    tally.record("triangle", tri <= 1e-10, tri);

    const double s = 0.1 * (1 + trial % 9);
    const double t = 0.1 * (1 + (trial / 9) % 9);
    const double r = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(trial % 3)];
    const SpdMatrix x = on_ball(rng, a, uniform(rng, 0.0, r));
    const SpdMatrix y = on_ball(rng, a, uniform(rng, 0.0, r));
    auto mst = [&](const SpdMatrix& z) {
      const SpdRoots zr = roots(z);
      const SpdMatrix cz = assume_spd(zr.inv_sqrt * a.dense() * zr.inv_sqrt);
      return assume_spd(zr.sqrt * f_st(s, t, cz).dense() * zr.sqrt);
    };
    const double dxy = d_inf(x, y);
    if (dxy > 1e-6) {
      const double ratio = d_inf(mst(x), mst(y)) / dxy;
      const double rho = contraction_coeff_mst(s, t, r);
      tally.record("contraction", ratio <= rho + 1e-9, ratio - rho);
    }
  }
}

void means_suite(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  Tally tally("means", out);
  Rng rng(opt.seed + 1);
  const int n = opt.dim;
  const SolverConfig cfg;
  for (int trial = 0; trial < opt.trials; ++trial) {
    tally.guarded("two_point_karcher", [&] {
      const SpdMatrix a = random_spd(rng, n);
      const SpdMatrix b = random_spd(rng, n);
      const std::vector<WeightedMatrix> sigma{{0.5, a}, {0.5, b}};
      const SolverReport rep = lambda_mean(product_measure(SMeasure::lebesgue(), sigma), cfg);
      const double err = d_inf(rep.mean, geom_mean_t(a, b, 0.5));
      tally.record("two_point_karcher", err <= 1e-6, err);
    });

    const PMeasure mu = random_mu(rng, n, trial);
    tally.guarded("lambda", [&] {
      const SolverReport lam = lambda_mean(mu, cfg);
      tally.record("karcher_residual", lam.residual_norm <= cfg.residual_tol, lam.residual_norm);
      tally.record("lambda_sandwich", sandwich_check(lam.mean, mu));

      const SolverReport lt = induced_mean(0.5, mu, cfg);
      const double fp = d_inf(lt.mean, iteration_map(lt.mean, 0.5, mu));
      tally.record("fixed_point", fp <= 10 * cfg.fp_tol, fp);
      tally.record("induced_sandwich", sandwich_check(lt.mean, mu));
      tally.record("t_monotone", loewner_leq(lam.mean, lt.mean, 1e-9));

      std::vector<Atom> bigger;
      for (const auto& atom : mu.atoms()) {
        const SymMatrix extra = random_psd(rng, n, 1 + trial % n, 0.5);
        bigger.push_back({atom.weight, assume_spd(atom.matrix.dense() + extra.dense()), atom.nu});
      }
      const PMeasure mu2(std::move(bigger));
      const SolverReport lam2 = lambda_mean(mu2, cfg);
      tally.record("monotone_in_measure", !measure_leq(mu, mu2) || loewner_leq(lam.mean, lam2.mean, 1e-8));
    });
  }
}

void divergence_suite(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  Tally tally("divergence", out);
  Rng rng(opt.seed + 2);
  const int n = opt.dim;
  for (int trial = 0; trial < opt.trials; ++trial) {
    const PMeasure mu = random_mu(rng, n, trial);
    const SpdMatrix x = random_spd(rng, n, 0.1, 10.0);

    const double f = objective(x, mu);
    tally.record("objective_nonnegative", f >= 0.0);

    const SpdMatrix a = mu.atoms().front().matrix;
    const double s = uniform(rng, 0.0, 1.0);
    tally.record("ld_identity", std::abs(ld_s(a, a, s)) <= 1e-12, std::abs(ld_s(a, a, s)));

    tally.guarded("gradient_fd", [&] {
      // V = X^{1/2} W X^{1/2} with ||W||_F = 1, so X +- hV stays well inside the cone.
      const SymMatrix w = random_symmetric(rng, n);
      const SpdRoots rx = roots(x);
      const SymMatrix v(rx.sqrt * (w.dense() / w.frobenius()) * rx.sqrt);
      const SymMatrix g = riemannian_grad(x, mu);
      const double analytic = (rx.inv_sqrt * g.dense() * rx.inv_sqrt * (w.dense() / w.frobenius())).trace();
      const double hstep = 1e-5;
      const double fp = objective(SpdMatrix(x.dense() + hstep * v.dense()), mu);
      const double fm = objective(SpdMatrix(x.dense() - hstep * v.dense()), mu);
      const double numeric = (fp - fm) / (2.0 * hstep);
      const double err = std::abs(numeric - analytic) / std::max(std::abs(analytic), 1e-8);
      tally.record("gradient_fd", err <= 1e-5, err);
    });

    tally.guarded("argmin", [&] {
      const SolverReport lam = lambda_mean(mu);
      const SolverReport gd = rgd_minimize(mu);
      const double err = d_inf(lam.mean, gd.mean);
      tally.record("argmin", err <= 1e-6, err);
    });

    if (trial < std::max(1, opt.trials / 10)) {
      const ConvexityResult conv = geodesic_convexity_check(mu, 100, opt.seed + static_cast<std::uint64_t>(trial));
      tally.record("geodesic_convexity", conv.passed, conv.worst_excess);
    }
  }
}

}  // namespace

std::vector<CheckResult> run_suite(std::string_view suite, const VerifyOptions& opt) {
  if (opt.dim < 1 || opt.trials < 0) fail(ErrorKind::kDomain, "dim must be positive and trials nonnegative");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && suite != "thompson" && suite != "means" && suite != "divergence") {
    fail(ErrorKind::kDomain, "unknown suite \"" + std::string(suite) + "\"");
  }
  if (all || suite == "thompson") thompson_suite(opt, out);
  if (all || suite == "means") means_suite(opt, out);
  if (all || suite == "divergence") divergence_suite(opt, out);
  return out;
}

}  // namespace spdmean
