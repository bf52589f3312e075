#include "spdmean/omf.hpp"

#include <cmath>
#include <string>

namespace spdmean {
namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::kDomain, std::string(name) + " must lie in [0, 1]");
}

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::kDomain, "argument must be positive and finite");
}

QuadratureRule atom_rule(const std::vector<SAtom>& points) {
  QuadratureRule rule;
  for (const auto& p : points) {
    rule.s.push_back(p.s);
    rule.sc.push_back(1.0 - p.s);
    rule.w.push_back(p.weight);
  }
  rule.mass = 1.0;
  return rule;
}

// The family evaluated at each eigenvalue.
std::vector<double> mix_on_spectrum(const kernels::MobiusFamily& fam, const Vector& lambda) {
  std::vector<double> out(static_cast<std::size_t>(lambda.size()));
  kernels::active().mobius_mix(fam, {lambda.data(), out.size()}, out);
  return out;
}

}  // namespace

SMeasure SMeasure::dirac(double s) {
  require_unit(s, "s");
  SMeasure m;
  m.kind_ = Kind::kDirac;
  m.points_ = {{s, 1.0}};
  m.rule_ = std::make_shared<const QuadratureRule>(atom_rule(m.points_));
  return m;
}

SMeasure SMeasure::atoms(std::vector<SAtom> points) {
  if (points.empty()) fail(ErrorKind::kMeasure, "atom list is empty");
  double total = 0.0;
  for (const auto& p : points) {
    if (!(p.s >= 0.0 && p.s <= 1.0)) fail(ErrorKind::kMeasure, "atom location outside [0, 1]");
    if (!(p.weight > 0.0)) fail(ErrorKind::kMeasure, "atom weights must be positive");
    total += p.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::kMeasure, "atom weights must sum to one");
  SMeasure m;
  m.kind_ = Kind::kAtoms;
  m.points_ = std::move(points);
  m.rule_ = std::make_shared<const QuadratureRule>(atom_rule(m.points_));
  return m;
}

SMeasure SMeasure::lebesgue(int nodes) {
  SMeasure m;
  m.kind_ = Kind::kLebesgue;
  m.nodes_ = nodes;
  m.rule_ = std::make_shared<const QuadratureRule>(power_density_rule(0.0, nodes));
  return m;
}

SMeasure SMeasure::power(double t, int nodes) {
  if (!(t > -1.0 && t < 1.0) || t == 0.0) {
    fail(ErrorKind::kMeasure, "power density parameter must lie in (-1, 1) and be nonzero");
  }
  SMeasure m;
  m.kind_ = Kind::kPower;
  m.exponent_ = t;
  m.nodes_ = nodes;
  m.rule_ = std::make_shared<const QuadratureRule>(power_density_rule(t, nodes));
  return m;
}

SMeasure SMeasure::custom(Density density, int nodes) {
  QuadratureRule rule = gauss_legendre(nodes);
  double total = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double d = density(rule.s[j]);
    if (!(d >= 0.0) || !std::isfinite(d)) fail(ErrorKind::kMeasure, "density must be finite and nonnegative");
    rule.w[j] *= d;
    total += rule.w[j];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    fail(ErrorKind::kMeasure, "density mass is " + std::to_string(total) + ", expected 1");
  }
  for (double& w : rule.w) w /= total;
  rule.mass = total;
  SMeasure m;
  m.kind_ = Kind::kCustom;
  m.nodes_ = nodes;
  m.density_ = std::make_shared<const Density>(std::move(density));
  m.rule_ = std::make_shared<const QuadratureRule>(std::move(rule));
  return m;
}

SMeasure SMeasure::transposed() const {
  SMeasure m = *this;
  for (auto& p : m.points_) p.s = 1.0 - p.s;
  m.exponent_ = -exponent_;
  if (density_) {
    auto inner = density_;
    m.density_ = std::make_shared<const Density>([inner](double s) { return (*inner)(1.0 - s); });
  }
  m.rule_ = std::make_shared<const QuadratureRule>(rule_->mirrored());
  return m;
}

bool SMeasure::same_structure(const SMeasure& other) const {
  if (kind_ != other.kind_ || nodes_ != other.nodes_ || exponent_ != other.exponent_) return false;
  if (points_.size() != other.points_.size()) return false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].s != other.points_[i].s) return false;
    if (std::abs(points_[i].weight - other.points_[i].weight) > 1e-12) return false;
  }
  if (kind_ == Kind::kCustom) return rule_->w == other.rule_->w && rule_->s == other.rule_->s;
  return true;
}

std::string_view to_string(SMeasure::Kind kind) {
  switch (kind) {
    case SMeasure::Kind::kDirac: return "dirac";
    case SMeasure::Kind::kAtoms: return "atoms";
    case SMeasure::Kind::kLebesgue: return "lebesgue";
    case SMeasure::Kind::kPower: return "power";
    case SMeasure::Kind::kCustom: return "custom";
  }
  return "unknown";
}

double ell(double s, double x) {
  require_unit(s, "s");
  require_positive(x);
  return (x - 1.0) / ((1.0 - s) * x + s);
}

SymMatrix ell(double s, const SpdMatrix& x) {
  require_unit(s, "s");
  return apply_scalar_fn(x, [s](double v) { return (v - 1.0) / ((1.0 - s) * v + s); });
}

double ell_inv(double s, double y) {
  require_unit(s, "s");
  const bool below = s > 0.0 && !(y > -1.0 / s);
  const bool above = s < 1.0 && !(y < 1.0 / (1.0 - s));
  if (below || above || !std::isfinite(y)) fail(ErrorKind::kDomain, "value outside the range of ell_s");
  return (1.0 + s * y) / (1.0 - (1.0 - s) * y);
}

double h(double s, double x) {
  require_unit(s, "s");
  require_positive(x);
  return x / ((1.0 - s) * x + s);
}

SpdMatrix h(double s, const SpdMatrix& x) {
  require_unit(s, "s");
  return assume_spd(apply_scalar_fn(x, [s](double v) { return v / ((1.0 - s) * v + s); }).dense());
}

double f_st(double s, double t, double x) {
  require_unit(s, "s");
  require_unit(t, "t");
  require_positive(x);
  const double u = t + s * (1.0 - t);
  const double uc = (1.0 - t) * (1.0 - s);
  return ((uc + t) * x + s * (1.0 - t)) / (uc * x + u);
}

SpdMatrix f_st(double s, double t, const SpdMatrix& x) {
  require_unit(s, "s");
  require_unit(t, "t");
  const double u = t + s * (1.0 - t);
  const double uc = (1.0 - t) * (1.0 - s);
  return assume_spd(
      apply_scalar_fn(x, [=](double v) { return ((uc + t) * v + s * (1.0 - t)) / (uc * v + u); }).dense());
}

double f_st_inv(double s, double t, double y) {
  require_unit(s, "s");
  require_unit(t, "t");
  if (t == 0.0) fail(ErrorKind::kDomain, "f_{s,0} is constant and has no inverse");
  const double u = t + s * (1.0 - t);
  const double uc = (1.0 - t) * (1.0 - s);
  const double lo = s * (1.0 - t) / u;
  const bool above = uc > 0.0 && !(y < (uc + t) / uc);
  if (!(y > lo) || above || !std::isfinite(y)) fail(ErrorKind::kDomain, "value outside the range of f_{s,t}");
  return (u * y - s * (1.0 - t)) / (uc * (1.0 - y) + t);
}

ShiftedEll::ShiftedEll(const QuadratureRule& rule, double t) {
  const std::size_t n = rule.size();
  p.assign(n, 1.0);
  q.assign(n, -1.0);
  r.resize(n);
  v.resize(n);
  w = rule.w;
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = (1.0 - t) * rule.sc[j];
    v[j] = t + (1.0 - t) * rule.s[j];
  }
}

void ShiftedEll::eval(std::span<const double> x, std::span<double> out) const {
  kernels::active().mobius_mix(family(), x, out);
}

double eval_L(const SMeasure& rep, double x) {
  require_positive(x);
  const ShiftedEll fam(rep.rule(), 0.0);
  double out = 0.0;
  fam.eval({&x, 1}, {&out, 1});
  return out;
}

SymMatrix eval_L(const SMeasure& rep, const SpdMatrix& x) {
  const SpectralDecomposition sd = spectral(x);
  const ShiftedEll fam(rep.rule(), 0.0);
  return SymMatrix(compose(sd.eigenvectors, mix_on_spectrum(fam.family(), sd.eigenvalues)));
}

SpdMatrix eval_kubo(const SMeasure& nu, const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  const QuadratureRule& rule = nu.rule();
  const std::vector<double> p(rule.size(), 1.0);
  const std::vector<double> q(rule.size(), 0.0);
  const kernels::MobiusFamily fam{p, q, rule.sc, rule.s, rule.w};
  const SpdRoots ra = roots(a);
  const SpectralDecomposition sd = spectral(SymMatrix(ra.inv_sqrt * b.dense() * ra.inv_sqrt));
  return assume_spd(ra.sqrt * compose(sd.eigenvectors, mix_on_spectrum(fam, sd.eigenvalues)) * ra.sqrt);
}

Normalization check_normalization(const SMeasure& rep) {
  constexpr double step = 1e-4;
  auto f = [&rep](double x) { return eval_L(rep, x); };
  const double d = (-f(1.0 + 2 * step) + 8 * f(1.0 + step) - 8 * f(1.0 - step) + f(1.0 - 2 * step)) / (12 * step);
  return {f(1.0), d};
}

}  // namespace spdmean
