#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"
#include "spdmean/omf.hpp"
#include "spdmean/thompson.hpp"

using namespace spdmean;

namespace {

SpdMatrix diag(std::initializer_list<double> d) { return SpdMatrix::diagonal(std::vector<double>(d)); }

SpdMatrix scaled(double c, const SpdMatrix& a) { return assume_spd(c * a.dense()); }

// A^{1/2} exp(H) A^{1/2} with ||H||_2 = radius.
SpdMatrix point_at(Rng& rng, const SpdMatrix& a, double radius) {
  const SymMatrix g = random_symmetric(rng, a.dim());
  const double norm = spectral(g).eigenvalues.cwiseAbs().maxCoeff();
  return congruence(sqrt(a).dense(), exp((radius / norm) * g));
}

SpdMatrix mst(double s, double t, const SpdMatrix& x, const SpdMatrix& a) {
  const SpdRoots r = roots(x);
  return assume_spd(r.sqrt * f_st(s, t, assume_spd(r.inv_sqrt * a.dense() * r.inv_sqrt)).dense() * r.sqrt);
}

}  // namespace

TEST_CASE("m_ratio and d_inf examples") {
  Rng rng(21);
  const SpdMatrix a = random_spd(rng, 3);
  CHECK(m_ratio(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m_ratio(diag({2.0, 2.0}), SpdMatrix::identity(2)) == doctest::Approx(2.0));
  CHECK(m_ratio(diag({1.0, 4.0}), diag({2.0, 1.0})) == doctest::Approx(4.0));
  CHECK(d_inf(a, a) <= 1e-12);
  CHECK(d_inf(diag({2.0, 2.0}), SpdMatrix::identity(2)) == doctest::Approx(std::log(2.0)));
  CHECK(d_inf(diag({1.0, 4.0}), diag({2.0, 1.0})) == doctest::Approx(std::log(4.0)));
  CHECK_THROWS_AS(d_inf(a, SpdMatrix::identity(2)), Error);
}

TEST_CASE("d_inf agrees with the generalized eigenproblem oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const SpdMatrix a = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix b = random_spd(rng, n, 0.1, 10.0);
    CHECK(d_inf(a, b) == doctest::Approx(testing::oracle_thompson(a.dense(), b.dense())).epsilon(1e-11));
  }
}

TEST_CASE("metric properties") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const SpdMatrix a = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix b = random_spd(rng, n, 0.1, 10.0);
    const SpdMatrix c = random_spd(rng, n, 0.1, 10.0);
    const double d = d_inf(a, b);
    const double r = uniform(rng, 0.1, 10.0);
    CHECK(std::abs(d_inf(scaled(r, a), scaled(r, b)) - d) <= 1e-10);
    CHECK(std::abs(d_inf(inverse(a), inverse(b)) - d) <= 1e-10);
    Dense m = random_orthogonal(rng, n);
    for (int i = 0; i < n; ++i) m.col(i) *= uniform(rng, 0.5, 2.0);
    CHECK(std::abs(d_inf(congruence(m, a), congruence(m, b)) - d) <= 1e-10);
    CHECK(std::abs(d_inf(b, a) - d) <= 1e-10);
    CHECK(d <= d_inf(a, c) + d_inf(c, b) + 1e-10);
    CHECK(loewner_leq(scaled(std::exp(-d), b), a));
    CHECK(loewner_leq(a, scaled(std::exp(d), b)));
  }
}

TEST_CASE("sums contract and the two-term weighted bound holds") {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    SpdMatrix a1 = random_spd(rng, n, 0.1, 10.0);
    SpdMatrix b1 = random_spd(rng, n, 0.1, 10.0);
    SpdMatrix a2 = random_spd(rng, n, 0.1, 10.0);
    SpdMatrix b2 = random_spd(rng, n, 0.1, 10.0);
    if (d_inf(a1, b1) < d_inf(a2, b2)) {
      std::swap(a1, a2);
      std::swap(b1, b2);
    }
    const double c1 = uniform(rng, 0.1, 3.0);
    const double c2 = uniform(rng, 0.1, 3.0);
    const SpdMatrix sa = assume_spd(c1 * a1.dense() + c2 * a2.dense());
    const SpdMatrix sb = assume_spd(c1 * b1.dense() + c2 * b2.dense());
    const double lhs = d_inf(sa, sb);
    CHECK(lhs <= std::max(d_inf(a1, b1), d_inf(a2, b2)) + 1e-10);

    const double e1 = std::exp(d_inf(a1, b1));
    const double e2 = std::exp(d_inf(a2, b2));
    const double ka = std::exp(-d_inf(a1, a2));
    const double kb = std::exp(-d_inf(b1, b2));
    const double bound = std::max((c1 * e1 + c2 * ka * e2) / (c1 + c2 * ka), (c1 * e1 + c2 * kb * e2) / (c1 + c2 * kb));
    CHECK(std::exp(lhs) <= bound * (1.0 + 1e-10));
  }
}

TEST_CASE("contraction_coeff_arith") {
  const double e = std::exp(1.0);
  CHECK(contraction_coeff_arith(1.0, 1.0, 1.0) == doctest::Approx(std::log((e * e * e + 1.0) / (e + 1.0)) / 2.0));
  CHECK(contraction_coeff_arith(1.0, 1e-12, 1.0) < 1e-11);
  CHECK(contraction_coeff_arith(1.0, 1.0, 20.0) < 1.0);
  Rng rng(25);
  for (int i = 0; i < 10000; ++i) {
    const double a = std::exp(uniform(rng, -5.0, 5.0));
    const double b = std::exp(uniform(rng, -5.0, 5.0));
    const double r = std::exp(uniform(rng, -3.0, 3.0));
    const double rho = contraction_coeff_arith(a, b, r);
    CHECK(rho > 0.0);
    CHECK(rho < 1.0);
  }
  CHECK_THROWS_AS(contraction_coeff_arith(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(contraction_coeff_arith(1.0, 1.0, -1.0), Error);
}

TEST_CASE("contraction_coeff_mst and the uniform bound") {
  for (double t : {0.1, 0.5, 0.9}) {
    for (double r : {0.5, 1.0, 3.0}) {
      const double rho1 = std::log((std::exp(3 * r) * (1 - t) + t) / (std::exp(r) * (1 - t) + t)) / (2 * r);
      CHECK(contraction_coeff_mst(0.0, t, r) == doctest::Approx(rho1).epsilon(1e-14));
    }
  }
  CHECK(contraction_coeff_mst(0.3, 1.0, 2.0) == 0.0);
  CHECK(contraction_coeff_uniform(1.0, 2.0) == 0.0);
  const double half = contraction_coeff_mst(0.5, 0.5, 1.0);
  CHECK(half > 0.0);
  CHECK(half < 1.0);

  Rng rng(26);
  for (int t10 = 1; t10 <= 10; ++t10) {
    for (double r : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
      const double t = 0.1 * t10;
      const double u = contraction_coeff_uniform(t, r);
      CHECK(u < 1.0);
      for (int k = 0; k < 100; ++k) CHECK(contraction_coeff_mst(uniform(rng, 0.0, 1.0), t, r) <= u + 1e-15);
    }
  }
  CHECK_THROWS_AS(contraction_coeff_mst(0.5, 0.0, 1.0), Error);
  CHECK_THROWS_AS(contraction_coeff_uniform(0.0, 1.0), Error);
}

TEST_CASE("M_{s,1}(X, A) = A") {
  Rng rng(27);
  const SpdMatrix a = random_spd(rng, 3);
  const SpdMatrix x = random_spd(rng, 3);
  CHECK(testing::rel_err(mst(0.4, 1.0, x, a).dense(), a.dense()) <= 1e-10);
  CHECK(testing::rel_err(mst(0.4, 0.0, x, a).dense(), x.dense()) <= 1e-12);
}

TEST_CASE("measured contraction stays below contraction_coeff_mst") {
  Rng rng(28);
  for (int si = 1; si <= 9; ++si) {
    for (int ti = 1; ti <= 9; ++ti) {
      for (double r : {0.5, 1.0, 2.0}) {
        const double s = 0.1 * si;
        const double t = 0.1 * ti;
        const double rho = contraction_coeff_mst(s, t, r);
        const SpdMatrix a = random_spd(rng, 3, 0.1, 10.0);
        for (int k = 0; k < 4; ++k) {
          const SpdMatrix x = point_at(rng, a, uniform(rng, 0.0, r));
          const SpdMatrix y = point_at(rng, a, uniform(rng, 0.0, r));
          const double dxy = d_inf(x, y);
          if (dxy < 1e-6) continue;
          CHECK(d_inf(mst(s, t, x, a), mst(s, t, y, a)) / dxy <= rho + 1e-9);
        }
      }
    }
  }
}
