#pragma once

// Operator monotone families on (0, inf) and probability measures on [0, 1]
// that represent them:
//   ell_s(x)    = (x - 1) / ((1 - s) x + s)
//   h_s(x)      = x / ((1 - s) x + s)
//   f_{s,t}(x)  = ([(1-t)(1-s) + t] x + s(1-t)) / ((1-t)(1-s) x + t + s(1-t))
// A probability measure nu on [0, 1] gives f = int ell_s dnu (f(1) = 0,
// f'(1) = 1) and the Kubo-Ando mean with kernel int h_s dnu.

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "spdmean/kernels.hpp"
#include "spdmean/matrix.hpp"
#include "spdmean/quadrature.hpp"

namespace spdmean {

inline constexpr int kDefaultNodes = 128;

struct SAtom {
  double s;
  double weight;
};

class SMeasure {
 public:
  enum class Kind { kDirac, kAtoms, kLebesgue, kPower, kCustom };
  using Density = std::function<double(double)>;

  static SMeasure dirac(double s);
  static SMeasure atoms(std::vector<SAtom> points);
  static SMeasure lebesgue(int nodes = kDefaultNodes);
  /// Density s^t (1 - s)^{-t} sin(t pi) / (t pi), t in (-1, 1) \ {0}.
  static SMeasure power(double t, int nodes = kDefaultNodes);
  /// Density on [0, 1] integrated by Gauss-Legendre; must have mass one
  /// within 1e-6 (MeasureError otherwise).
  static SMeasure custom(Density density, int nodes);

  Kind kind() const { return kind_; }
  const std::vector<SAtom>& points() const { return points_; }
  double exponent() const { return exponent_; }
  int nodes() const { return nodes_; }
  const QuadratureRule& rule() const { return *rule_; }

  /// Image under s -> 1 - s.
  SMeasure transposed() const;

  /// Same kind and parameters; the structural test behind measure_leq.
  bool same_structure(const SMeasure& other) const;

 private:
  SMeasure() = default;

  Kind kind_ = Kind::kLebesgue;
  std::vector<SAtom> points_;
  double exponent_ = 0.0;
  int nodes_ = 0;
  std::shared_ptr<const Density> density_;
  std::shared_ptr<const QuadratureRule> rule_;
};

std::string_view to_string(SMeasure::Kind kind);

double ell(double s, double x);
SymMatrix ell(double s, const SpdMatrix& x);
double ell_inv(double s, double y);

double h(double s, double x);
SpdMatrix h(double s, const SpdMatrix& x);

double f_st(double s, double t, double x);
SpdMatrix f_st(double s, double t, const SpdMatrix& x);
double f_st_inv(double s, double t, double y);

/// Moebius coefficients of x -> int ell_{t + s(1-t)}(x) dnu(s), one term per
/// quadrature node. Note f_{s,t} - 1 = t ell_{t + s(1-t)}.
struct ShiftedEll {
  std::vector<double> p, q, r, v, w;

  ShiftedEll(const QuadratureRule& rule, double t);
  kernels::MobiusFamily family() const { return {p, q, r, v, w}; }
  void eval(std::span<const double> x, std::span<double> out) const;
};

double eval_L(const SMeasure& rep, double x);
SymMatrix eval_L(const SMeasure& rep, const SpdMatrix& x);

/// int [(1 - s) A^{-1} + s B^{-1}]^{-1} dnu(s).
SpdMatrix eval_kubo(const SMeasure& nu, const SpdMatrix& a, const SpdMatrix& b);

struct Normalization {
  double f1;
  double fprime1;
};

/// f(1) and a five-point centered estimate of f'(1).
Normalization check_normalization(const SMeasure& rep);

}  // namespace spdmean
