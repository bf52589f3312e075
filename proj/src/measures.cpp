#include "spdmean/measures.hpp"

#include <cmath>
#include <string>

namespace spdmean {

PMeasure::PMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) fail(ErrorKind::kEmptyInput, "measure has no atoms");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) fail(ErrorKind::kMeasure, "atom weights must be positive");
    require_same_dim(atoms_.front().matrix, a.matrix);
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorKind::kMeasure, "atom weights sum to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<WeightedMatrix> PMeasure::sigma() const {
  std::vector<WeightedMatrix> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back({a.weight, a.matrix});
  return out;
}

PMeasure product_measure(const SMeasure& nu, std::span<const WeightedMatrix> sigma) {
  std::vector<Atom> atoms;
  atoms.reserve(sigma.size());
  for (const auto& p : sigma) atoms.push_back({p.weight, p.matrix, nu});
  return PMeasure(std::move(atoms));
}

SymMatrix integrate(const PMeasure& mu, const Integrand& g) {
  Dense acc = Dense::Zero(mu.dim(), mu.dim());
  for (const auto& a : mu.atoms()) {
    const QuadratureRule& rule = a.nu.rule();
    Dense inner = Dense::Zero(mu.dim(), mu.dim());
    for (std::size_t j = 0; j < rule.size(); ++j) inner += rule.w[j] * g(rule.s[j], a.matrix).dense();
    acc += a.weight * inner;
  }
  return SymMatrix(acc);
}

void require_matched(const PMeasure& mu1, const PMeasure& mu2) {
  if (mu1.size() != mu2.size()) fail(ErrorKind::kIncomparable, "atom counts differ");
  if (mu1.dim() != mu2.dim()) fail(ErrorKind::kIncomparable, "dimensions differ");
  for (std::size_t k = 0; k < mu1.size(); ++k) {
    const Atom& a = mu1.atoms()[k];
    const Atom& b = mu2.atoms()[k];
    if (std::abs(a.weight - b.weight) > 1e-12) fail(ErrorKind::kIncomparable, "atom weights differ");
    if (!a.nu.same_structure(b.nu)) fail(ErrorKind::kIncomparable, "s-marginals differ");
  }
}

PMeasure congruence_measure(const Dense& x, const PMeasure& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back({a.weight, congruence(x, a.matrix), a.nu});
  return PMeasure(std::move(atoms));
}

PMeasure interpolate(const PMeasure& mu1, const PMeasure& mu2, double u) {
  if (!(u >= 0.0 && u <= 1.0)) fail(ErrorKind::kDomain, "interpolation parameter must lie in [0, 1]");
  require_matched(mu1, mu2);
  std::vector<Atom> atoms;
  atoms.reserve(mu1.size());
  for (std::size_t k = 0; k < mu1.size(); ++k) {
    const Atom& a = mu1.atoms()[k];
    const Dense m = (1.0 - u) * a.matrix.dense() + u * mu2.atoms()[k].matrix.dense();
    atoms.push_back({a.weight, assume_spd(m), a.nu});
  }
  return PMeasure(std::move(atoms));
}

bool measure_leq(const PMeasure& mu1, const PMeasure& mu2) {
  require_matched(mu1, mu2);
  for (std::size_t k = 0; k < mu1.size(); ++k) {
    if (!loewner_leq(mu1.atoms()[k].matrix, mu2.atoms()[k].matrix, 1e-10)) return false;
  }
  return true;
}

}  // namespace spdmean
