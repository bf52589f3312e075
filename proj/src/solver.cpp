#include "spdmean/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spdmean/kernels.hpp"
#include "spdmean/thompson.hpp"

namespace spdmean {
namespace {

Dense sym(const Dense& m) { return 0.5 * (m + m.transpose()); }

void require_t(double t, bool allow_zero) {
  const bool ok = allow_zero ? (t >= 0.0 && t <= 1.0) : (t > 0.0 && t <= 1.0);
  if (!ok) fail(ErrorKind::kDomain, allow_zero ? "t must lie in [0, 1]" : "t must lie in (0, 1]");
}

// max |log mu_i| over the eigenvalues of a matrix congruent to X^{-1/2} Y X^{-1/2}.
double thompson_from_ratio(const Dense& ratio) {
  Eigen::SelfAdjointEigenSolver<Dense> es(sym(ratio), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  if (!(ev(0) > 0.0)) fail(ErrorKind::kNumericalFailure, "iterate left the positive cone");
  return std::max(std::abs(std::log(ev(0))), std::abs(std::log(ev(ev.size() - 1))));
}

struct AtomSpectrum {
  Vector lambda;
  Dense q;
};

// Evaluation point of the shifted residual in coordinates normalized at X:
// g = X^{-1/2} R_t(X) X^{-1/2}.
struct Point {
  SpdMatrix x;
  Dense sqrt;
  Dense inv_sqrt;
  std::vector<AtomSpectrum> atoms;
  Dense g;
  double g_norm = 0.0;

  Dense residual() const { return sym(sqrt * g * sqrt); }
};

class ShiftedProblem {
 public:
  ShiftedProblem(const PMeasure& mu, double t) : mu_(mu), t_(t) {
    families_.reserve(mu.size());
    for (const auto& a : mu.atoms()) families_.emplace_back(a.nu.rule(), t);
  }

  double t() const { return t_; }

  Point evaluate(const SpdMatrix& x) const {
    Point p{x, {}, {}, {}, {}, 0.0};
    const SpdRoots r = roots(x);
    p.sqrt = r.sqrt;
    p.inv_sqrt = r.inv_sqrt;
    const int n = x.dim();
    p.g = Dense::Zero(n, n);
    p.atoms.reserve(mu_.size());
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      const Atom& atom = mu_.atoms()[k];
      SpectralDecomposition sd = spectral(SymMatrix(r.inv_sqrt * atom.matrix.dense() * r.inv_sqrt));
      std::vector<double> psi(static_cast<std::size_t>(n));
      families_[k].eval({sd.eigenvalues.data(), psi.size()}, psi);
      p.g += atom.weight * compose(sd.eigenvectors, psi);
      p.atoms.push_back({std::move(sd.eigenvalues), std::move(sd.eigenvectors)});
    }
    p.g = sym(p.g);
    p.g_norm = p.g.norm();
    if (!std::isfinite(p.g_norm)) fail(ErrorKind::kNumericalFailure, "residual is not finite");
    return p;
  }

  // Derivative of Y -> g(Y) at Y = I on the orthonormal basis of symmetric
  // matrices {e_i e_i^T} U {(e_i e_j^T + e_j e_i^T) / sqrt 2}.
  Dense jacobian(const Point& p) const {
    const int n = p.x.dim();
    const auto un = static_cast<std::size_t>(n);
    std::vector<Dense> gammas;
    gammas.reserve(mu_.size());
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      const ShiftedEll& fam = families_[k];
      const std::size_t nodes = fam.w.size();
      const Vector& lambda = p.atoms[k].lambda;
      std::vector<double> inv_m(nodes * un);
      for (std::size_t i = 0; i < un; ++i) {
        kernels::active().inv_affine(fam.r, fam.v, lambda(static_cast<Eigen::Index>(i)),
                                     {inv_m.data() + i * nodes, nodes});
      }
      std::vector<double> w_uc(nodes);
      for (std::size_t j = 0; j < nodes; ++j) w_uc[j] = fam.w[j] * fam.r[j];
      Dense gram0(n, n);
      Dense gram1(n, n);
      kernels::active().weighted_gram(inv_m, fam.w, nodes, un, {gram0.data(), un * un});
      kernels::active().weighted_gram(inv_m, w_uc, nodes, un, {gram1.data(), un * un});
      const Vector shifted = lambda.array() - 1.0;
      gammas.push_back((shifted * shifted.transpose()).cwiseProduct(gram1) - gram0);
    }

    const int dim = n * (n + 1) / 2;
    Dense jac(dim, dim);
    const double root2 = std::sqrt(2.0);
    int col = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j, ++col) {
        Dense out = Dense::Zero(n, n);
        for (std::size_t k = 0; k < mu_.size(); ++k) {
          const Dense& q = p.atoms[k].q;
          const Vector ri = q.row(i).transpose();
          const Vector rj = q.row(j).transpose();
          Dense z = i == j ? Dense(ri * ri.transpose()) : Dense((ri * rj.transpose() + rj * ri.transpose()) / root2);
          out += mu_.atoms()[k].weight * (q * gammas[k].cwiseProduct(z) * q.transpose());
        }
        jac.col(col) = to_coords(sym(out));
      }
    }
    return jac;
  }

  static Vector to_coords(const Dense& e) {
    const int n = static_cast<int>(e.rows());
    Vector v(n * (n + 1) / 2);
    const double root2 = std::sqrt(2.0);
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) v(idx++) = i == j ? e(i, i) : root2 * e(i, j);
    }
    return v;
  }

  static Dense from_coords(const Vector& v, int n) {
    Dense e(n, n);
    const double root2 = std::sqrt(2.0);
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double val = i == j ? v(idx) : v(idx) / root2;
        e(i, j) = val;
        e(j, i) = val;
        ++idx;
      }
    }
    return e;
  }

 private:
  const PMeasure& mu_;
  double t_;
  std::vector<ShiftedEll> families_;
};

// X^{1/2} exp(alpha E) X^{1/2}
SpdMatrix move_along(const Point& p, const Dense& e, double alpha) {
  const SpdMatrix ex = exp(SymMatrix(alpha * e));
  return assume_spd(p.sqrt * ex.dense() * p.sqrt);
}

double max_abs_eig(const Dense& e) {
  Eigen::SelfAdjointEigenSolver<Dense> es(e, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct LineSearch {
  bool accepted = false;
  Point point;
  double alpha = 0.0;
};

LineSearch backtrack(const ShiftedProblem& prob, const Point& p, const Dense& e) {
  double alpha = 1.0;
  for (int k = 0; k < 30; ++k, alpha *= 0.5) {
    try {
      Point trial = prob.evaluate(move_along(p, e, alpha));
      if (trial.g_norm <= (1.0 - 1e-4 * alpha) * p.g_norm) return {true, std::move(trial), alpha};
    } catch (const Error&) {
      // Overshoot out of the representable cone; shrink the step.
    }
  }
  return {};
}

int a_priori_bound(double t, const PMeasure& mu, const SpdMatrix& x0, double d0, double fp_tol) {
  if (t <= 0.0) return -1;
  if (d0 <= fp_tol) return 0;
  double r = 0.0;
  for (const auto& a : mu.atoms()) r = std::max(r, d_inf(a.matrix, x0));
  r = std::max(2.0 * r, 1e-12);
  const double rho = contraction_coeff_uniform(t, r);
  if (rho <= 0.0) return 1;
  if (!(rho < 1.0)) return -1;
  const double bound = std::ceil(std::log(fp_tol / d0) / std::log(rho));
  return bound < 1e9 ? static_cast<int>(bound) : -1;
}

SolverReport solve_shifted(double t, const PMeasure& mu, const SpdMatrix& x0, const SolverConfig& cfg) {
  require_same_dim(x0, mu.atoms().front().matrix);
  const ShiftedProblem prob(mu, t);
  const int n = x0.dim();
  Point p = prob.evaluate(x0);

  SolverReport report;
  if (t > 0.0) {
    const double d0 = thompson_from_ratio(Dense::Identity(n, n) + t * p.g);
    report.iterations_bound = a_priori_bound(t, mu, x0, d0, cfg.fp_tol);
  }

  double step = std::numeric_limits<double>::infinity();
  bool converged = p.g_norm == 0.0;
  if (converged) step = 0.0;
  int it = 0;
  while (!converged && it < cfg.max_iters) {
    ++it;
    if (cfg.method == SolverConfig::Method::kBanach && t > 0.0) {
      const Dense ratio = Dense::Identity(n, n) + t * p.g;
      step = thompson_from_ratio(ratio);
      p = prob.evaluate(assume_spd(p.sqrt * ratio * p.sqrt));
      converged = step <= cfg.fp_tol;
      continue;
    }

    const Dense jac = prob.jacobian(p);
    const Vector rhs = -ShiftedProblem::to_coords(p.g);
    const Vector delta = jac.partialPivLu().solve(rhs);
    const Dense e = delta.allFinite() ? ShiftedProblem::from_coords(delta, n) : Dense(p.g);
    const double newton_step = max_abs_eig(e);
    if (newton_step <= cfg.fp_tol) {
      step = newton_step;
      converged = true;
      break;
    }

    LineSearch ls = backtrack(prob, p, e);
    if (ls.accepted) {
      step = ls.alpha * newton_step;
      p = std::move(ls.point);
    } else if (newton_step <= 1e-9) {
      // The residual sits at rounding level; no direction reduces it further.
      step = newton_step;
      converged = true;
      break;
    } else if (t > 0.0) {
      const Dense ratio = Dense::Identity(n, n) + t * p.g;
      step = thompson_from_ratio(ratio);
      p = prob.evaluate(assume_spd(p.sqrt * ratio * p.sqrt));
    } else {
      LineSearch gs = backtrack(prob, p, p.g);
      const double alpha = gs.accepted ? gs.alpha : 1e-3;
      step = alpha * max_abs_eig(p.g);
      p = gs.accepted ? std::move(gs.point) : prob.evaluate(move_along(p, p.g, alpha));
    }
    converged = step <= cfg.fp_tol;
  }
  if (!converged) {
    throw NonConvergence("fixed-point solve at t = " + std::to_string(t) + " did not converge in " +
                             std::to_string(it) + " iterations",
                         it, step);
  }
  report.mean = p.x;
  report.iterations = it;
  report.final_step = step;
  report.residual_norm = p.residual().norm();
  return report;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(fp_tol > 0.0)) fail(ErrorKind::kDomain, "fp_tol must be positive");
  if (max_iters <= 0) fail(ErrorKind::kDomain, "max_iters must be positive");
  if (!(t_factor > 0.0 && t_factor < 1.0)) fail(ErrorKind::kDomain, "t-schedule factor must lie in (0, 1)");
  if (!(t_start > 0.0 && t_start <= 1.0)) fail(ErrorKind::kDomain, "t_start must lie in (0, 1]");
  if (!(lambda_tol > 0.0)) fail(ErrorKind::kDomain, "lambda_tol must be positive");
  if (!(residual_tol > 0.0)) fail(ErrorKind::kDomain, "residual_tol must be positive");
}

SymMatrix shifted_residual(const SpdMatrix& x, double t, const PMeasure& mu) {
  require_t(t, true);
  require_same_dim(x, mu.atoms().front().matrix);
  return SymMatrix(ShiftedProblem(mu, t).evaluate(x).residual());
}

SymMatrix karcher_residual(const SpdMatrix& x, const PMeasure& mu) { return shifted_residual(x, 0.0, mu); }

SpdMatrix iteration_map(const SpdMatrix& x, double t, const PMeasure& mu) {
  require_t(t, true);
  require_same_dim(x, mu.atoms().front().matrix);
  const Point p = ShiftedProblem(mu, t).evaluate(x);
  const Dense ratio = Dense::Identity(x.dim(), x.dim()) + t * p.g;
  return assume_spd(p.sqrt * ratio * p.sqrt);
}

SolverReport induced_mean(double t, const PMeasure& mu, const SolverConfig& cfg) {
  const std::vector<WeightedMatrix> sigma = mu.sigma();
  return induced_mean(t, mu, weighted_arith(sigma), cfg);
}

SolverReport induced_mean(double t, const PMeasure& mu, const SpdMatrix& x0, const SolverConfig& cfg) {
  cfg.validate();
  require_t(t, false);
  SolverReport report = solve_shifted(t, mu, x0, cfg);
  report.t_trace.push_back({t, report.iterations});
  return report;
}

SolverReport power_mean(double t, std::span<const WeightedMatrix> sigma, const SolverConfig& cfg) {
  cfg.validate();
  require_t(t, false);
  SpdMatrix x = weighted_arith(sigma);
  const int n = x.dim();
  double step = std::numeric_limits<double>::infinity();
  int it = 0;
  // X -> sum_i w_i X^{1/2} (X^{-1/2} A_i X^{-1/2})^t X^{1/2}, expressed in X-normalized coordinates.
  auto normalized_map = [&](const SpdRoots& r) {
    Dense acc = Dense::Zero(n, n);
    for (const auto& p : sigma) {
      const SpectralDecomposition sd = spectral(SymMatrix(r.inv_sqrt * p.matrix.dense() * r.inv_sqrt));
      std::vector<double> v(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::pow(std::max(sd.eigenvalues(static_cast<Eigen::Index>(i)), 0.0), t);
      }
      acc += p.weight * compose(sd.eigenvectors, v);
    }
    return sym(acc);
  };
  while (it < cfg.max_iters) {
    ++it;
    const SpdRoots r = roots(x);
    const Dense ratio = normalized_map(r);
    step = thompson_from_ratio(ratio);
    x = assume_spd(r.sqrt * ratio * r.sqrt);
    if (step <= cfg.fp_tol) break;
  }
  if (!(step <= cfg.fp_tol)) {
    throw NonConvergence("power mean did not converge in " + std::to_string(it) + " iterations", it, step);
  }
  const SpdRoots r = roots(x);
  const Dense defect = r.sqrt * (normalized_map(r) - Dense::Identity(n, n)) * r.sqrt / t;

  SolverReport report;
  report.mean = x;
  report.iterations = it;
  report.final_step = step;
  report.residual_norm = sym(defect).norm();
  report.t_trace.push_back({t, it});
  return report;
}

SolverReport lambda_mean(const PMeasure& mu, const SolverConfig& cfg) {
  cfg.validate();
  const std::vector<WeightedMatrix> sigma = mu.sigma();
  SpdMatrix x = weighted_arith(sigma);

  SolverReport report;
  double t = cfg.t_start;
  double gap = std::numeric_limits<double>::infinity();
  bool first = true;
  while (true) {
    SolverReport level = solve_shifted(t, mu, x, cfg);
    report.t_trace.push_back({t, level.iterations});
    report.iterations += level.iterations;
    report.final_step = level.final_step;
    if (!first) {
      if (!loewner_leq(level.mean, x, 1e-9)) {
        fail(ErrorKind::kMonotonicityViolation,
             "L_t increased when t decreased to " + std::to_string(t));
      }
      gap = d_inf(level.mean, x);
    }
    x = level.mean;
    first = false;
    if (gap <= cfg.lambda_tol) break;
    t *= cfg.t_factor;
    if (t < 1e-300 || report.t_trace.size() > 2000) {
      throw NonConvergence("lambda net did not settle", report.iterations, gap);
    }
  }

  if (cfg.refine_limit) {
    SolverReport limit = solve_shifted(0.0, mu, x, cfg);
    if (!loewner_leq(limit.mean, x, 1e-9)) {
      fail(ErrorKind::kMonotonicityViolation, "limit solve exceeded the last net element");
    }
    report.t_trace.push_back({0.0, limit.iterations});
    report.iterations += limit.iterations;
    report.final_step = limit.final_step;
    x = limit.mean;
  }

  report.mean = x;
  report.residual_norm = karcher_residual(x, mu).frobenius();
  return report;
}

bool sandwich_check(const SpdMatrix& x, const PMeasure& mu) {
  require_same_dim(x, mu.atoms().front().matrix);
  const std::vector<WeightedMatrix> sigma = mu.sigma();
  return loewner_leq(weighted_harm(sigma), x, 1e-9) && loewner_leq(x, weighted_arith(sigma), 1e-9);
}

}  // namespace spdmean
