#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

using namespace spdmean;
using testing::rel_err;

namespace {

SpdMatrix diag(std::initializer_list<double> d) { return SpdMatrix::diagonal(std::vector<double>(d)); }

Dense orthogonality_defect(const Dense& q) { return q.transpose() * q - Dense::Identity(q.rows(), q.cols()); }

}  // namespace

TEST_CASE("construction symmetrizes and rejects indefinite input") {
  Dense m(2, 2);
  m << 2.0, 1.0, 0.0, 2.0;
  const SpdMatrix a(m);
  CHECK(a(0, 1) == 0.5);
  CHECK(a(1, 0) == 0.5);

  Dense bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(SpdMatrix{bad}, Error);
  CHECK_THROWS_AS(SpdMatrix{Dense(2, 3)}, Error);
  Dense nan = Dense::Identity(2, 2);
  nan(0, 0) = NAN;
  CHECK_THROWS_AS(SymMatrix{nan}, Error);
}

TEST_CASE("spectral decomposition") {
  const SpectralDecomposition id = spectral(SpdMatrix::identity(3));
  CHECK(id.eigenvalues.isApprox(Vector::Ones(3)));
  CHECK(orthogonality_defect(id.eigenvectors).norm() <= 1e-12 * 3);

  const SpectralDecomposition d = spectral(diag({4.0, 1.0}));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(4.0));

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix a = random_symmetric(rng, 5);
    const SpectralDecomposition sd = spectral(a);
    const Dense rebuilt = sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.transpose();
    CHECK((rebuilt - a.dense()).norm() <= 1e-10 * a.frobenius());
    CHECK(orthogonality_defect(sd.eigenvectors).norm() <= 1e-12 * 5);
    for (int i = 1; i < 5; ++i) CHECK(sd.eigenvalues(i - 1) <= sd.eigenvalues(i));
  }
}

TEST_CASE("functional calculus") {
  const double e = std::exp(1.0);
  const SymMatrix l = apply_scalar_fn(diag({e, e * e}), [](double x) { return std::log(x); });
  CHECK(l(0, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(2.0));

  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix a = random_spd(rng, 2 + trial % 5);
    CHECK(rel_err(apply_scalar_fn(a, [](double x) { return x; }).dense(), a.dense()) <= 1e-12);
    const Dense r = apply_scalar_fn(a, [](double x) { return std::sqrt(x); }).dense();
    CHECK(rel_err(r * r, a.dense()) <= 1e-10);
    CHECK(rel_err(apply_scalar_fn(a, [](double x) { return 1.0 / x; }).dense(), a.dense().inverse()) <= 1e-10);
    CHECK(rel_err(sqrt(a).dense(), testing::oracle_sqrt(a.dense())) <= 1e-10);
    CHECK(rel_err(log(a).dense(), testing::oracle_log(a.dense())) <= 1e-10);
    CHECK(rel_err(exp(log(a)).dense(), a.dense()) <= 1e-10);
    CHECK(rel_err(power(a, 0.3).dense(), testing::oracle_pow(a.dense(), 0.3)) <= 1e-10);
  }

  Dense indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(apply_scalar_fn(SymMatrix(indefinite), [](double x) { return std::log(x); }), Error);
}

TEST_CASE("congruence") {
  Rng rng(13);
  const SpdMatrix a = random_spd(rng, 3);
  CHECK(rel_err(congruence(Dense::Identity(3, 3), a).dense(), a.dense()) == 0.0);
  const SpdMatrix four = congruence(2.0 * Dense::Identity(2, 2), SpdMatrix::identity(2));
  CHECK(rel_err(four.dense(), 4.0 * Dense::Identity(2, 2)) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const Dense c = random_invertible(rng, n);
    const SpdMatrix x = random_spd(rng, n);
    const SpdMatrix y = congruence(c, x);
    CHECK(rel_err(congruence(c.inverse(), y).dense(), x.dense()) <= 1e-9);
  }

  Dense singular = Dense::Zero(2, 2);
  singular(0, 0) = 1.0;
  try {
    congruence(singular, SpdMatrix::identity(2));
    FAIL("expected SingularTransform");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSingularTransform);
  }
}

TEST_CASE("weighted geometric mean") {
  const SpdMatrix two = diag({2.0});
  const SpdMatrix eight = diag({8.0});
  CHECK(geom_mean_t(two, eight, 0.5)(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
  const SpdMatrix g = geom_mean_t(diag({2.0, 2.0}), diag({8.0, 2.0}), 0.5);
  CHECK(rel_err(g.dense(), diag({4.0, 2.0}).dense()) <= 1e-14);

  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const SpdMatrix a = random_spd(rng, n);
    const SpdMatrix b = random_spd(rng, n);
    const double t = uniform(rng, 0.0, 1.0);
    const SpdMatrix m = geom_mean_t(a, b, t);
    CHECK(rel_err(geom_mean_t(a, a, t).dense(), a.dense()) <= 1e-10);
    CHECK(rel_err(m.dense(), geom_mean_t(b, a, 1.0 - t).dense()) <= 1e-10);
    CHECK(rel_err(m.dense(), testing::oracle_geom_mean(a.dense(), b.dense(), t)) <= 1e-9);
    CHECK(rel_err(geom_mean_t(a, b, 0.0).dense(), a.dense()) == 0.0);
    CHECK(rel_err(geom_mean_t(a, b, 1.0).dense(), b.dense()) == 0.0);

    const Dense c = random_invertible(rng, n);
    const SpdMatrix lhs = congruence(c, m);
    const SpdMatrix rhs = geom_mean_t(congruence(c, a), congruence(c, b), t);
    CHECK(rel_err(lhs.dense(), rhs.dense()) <= 1e-9);

    const std::vector<WeightedMatrix> pairs{{1.0 - t, a}, {t, b}};
    if (t > 0.0 && t < 1.0) {
      CHECK(loewner_leq(weighted_harm(pairs), m, 1e-10));
      CHECK(loewner_leq(m, weighted_arith(pairs), 1e-10));
    }
  }
  CHECK_THROWS_AS(geom_mean_t(two, eight, 1.5), Error);
}

TEST_CASE("Loewner order") {
  Rng rng(15);
  const SpdMatrix a = random_spd(rng, 3);
  CHECK(loewner_leq(a, a, 0.0));
  const SpdMatrix one = SpdMatrix::identity(2);
  const SpdMatrix twice = diag({2.0, 2.0});
  CHECK(loewner_leq(one, twice, 0.0));
  CHECK_FALSE(loewner_leq(twice, one, 0.0));
  CHECK_FALSE(loewner_leq(diag({1.0, 3.0}), diag({2.0, 2.0})));
  CHECK_FALSE(loewner_leq(diag({2.0, 2.0}), diag({1.0, 3.0})));
  try {
    loewner_leq(one, SpdMatrix::identity(3));
    FAIL("expected ShapeError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kShape);
  }
}

TEST_CASE("weighted arithmetic and harmonic means") {
  Rng rng(16);
  const SpdMatrix a = random_spd(rng, 3);
  const std::vector<WeightedMatrix> single{{1.0, a}};
  CHECK(rel_err(weighted_arith(single).dense(), a.dense()) <= 1e-15);
  CHECK(rel_err(weighted_harm(single).dense(), a.dense()) <= 1e-12);

  const std::vector<WeightedMatrix> scalars{{0.5, diag({2.0})}, {0.5, diag({8.0})}};
  CHECK(weighted_arith(scalars)(0, 0) == doctest::Approx(5.0));
  CHECK(weighted_harm(scalars)(0, 0) == doctest::Approx(3.2));

  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_sigma(rng, 2 + trial % 4, 2 + trial % 3);
    CHECK(loewner_leq(weighted_harm(sigma), weighted_arith(sigma), 1e-10));
  }

  try {
    weighted_arith({});
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyInput);
  }
  const std::vector<WeightedMatrix> bad{{0.7, a}, {0.7, a}};
  CHECK_THROWS_AS(weighted_arith(bad), Error);
}
