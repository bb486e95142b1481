#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sepprob/random_states.hpp"

using namespace sepprob;

TEST_CASE("Philox stream is deterministic and streams are distinct") {
  RngStream a(42, 0), b(42, 0), c(42, 1);
  for (int i = 0; i < 64; ++i) {
    std::uint32_t va = a.next_u32();
    CHECK(va == b.next_u32());
    CHECK(va != c.next_u32());  // equal words are astronomically unlikely
  }
  double d = a.next_double();
  CHECK(d >= 0.0);
  CHECK(d < 1.0);
}

TEST_CASE("normal and gamma moments are roughly right") {
  RngStream rng(7, 0);
  double s = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = rng.next_normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::fabs(s / n) < 0.05);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.05));

  double g = 0;
  for (int i = 0; i < n; ++i) g += rng.next_gamma(0.5);
  CHECK(g / n == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("dirichlet draws live on the simplex") {
  RngStream rng(3, 0);
  auto y = dirichlet(rng, {1.5, 2.0, 1.0, 0.5});
  double total = 0;
  for (double v : y) {
    CHECK(v > 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quaternion algebra: i*j = k and the adjoint doubles eigenvalues") {
  Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  Quat ij = i * j;
  CHECK(ij.w == k.w);
  CHECK(ij.z == k.z);

  QuatMatrix m(2);
  m.at(0, 0) = {2, 0, 0, 0};
  m.at(1, 1) = {3, 0, 0, 0};
  m.at(0, 1) = {0, 0, 1, 0};
  m.at(1, 0) = Quat{0, 0, 1, 0}.conj();
  // Eigenvalues of [[2, j], [-j, 3]] are (5 +- sqrt(5))/2; det = 5.
  CHECK(det_self_adjoint(m) == doctest::Approx(5.0).epsilon(1e-12));
  auto c = m.complex_adjoint();
  CHECK(c.rows() == 4);
  CHECK(std::abs(c.determinant().real() - 25.0) < 1e-9);
}

TEST_CASE("partial transpose is an involution and needs a clean bipartition") {
  RngStream rng(11, 0);
  auto s = sample_cholesky_hs(FieldKind::COMPLEX, rng);
  auto pt = partial_transpose(s.rho, 2);
  CHECK((partial_transpose(pt, 2) - s.rho).norm() < 1e-14);
  CHECK_THROWS_AS(partial_transpose(s.rho, 3), Error);
}

TEST_CASE("samples are unit-trace PSD with exact-by-construction determinant") {
  RngStream rng(5, 0);
  for (auto field : {FieldKind::REAL, FieldKind::COMPLEX}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto s = sample_cholesky_hs(field, rng);
      CHECK(std::abs(s.rho.trace().real() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.rho);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
      double det = s.rho.determinant().real();
      CHECK(det == doctest::Approx(s.det_rho).epsilon(1e-9));
      double diff = s.det_pt - s.det_rho;
      CHECK(diff >= -1.0 / 16 - 1e-12);
      CHECK(diff <= 1.0 / 432 + 1e-12);
    }
  }
}

TEST_CASE("degenerate sampler pins the determinant to zero") {
  RngStream rng(9, 0);
  auto s = sample_degenerate(FieldKind::COMPLEX, rng);
  CHECK(s.is_degenerate);
  CHECK(s.det_rho == 0.0);
  CHECK(std::abs(s.rho.determinant().real()) < 1e-14);
  CHECK_THROWS_AS(sample_degenerate(FieldKind::QUATERNION, rng), Error);
}

TEST_CASE("Ginibre cross-check matches the Cholesky construction") {
  // Same flat measure, entirely different sampler: first moments of |rho|
  // must agree within Monte Carlo error.
  const int n = 40000;
  for (auto field : {FieldKind::REAL, FieldKind::COMPLEX}) {
    RngStream r1(123, 0), r2(456, 0);
    double m1 = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
      m1 += sample_cholesky_hs(field, r1).det_rho;
      m2 += sample_ginibre_hs(field, r2).det_rho;
    }
    m1 /= n;
    m2 /= n;
    CHECK(m1 == doctest::Approx(m2).epsilon(0.05));
  }
  RngStream r(1, 0);
  CHECK_THROWS_AS(sample_ginibre_hs(FieldKind::QUATERNION, r), Error);
}

TEST_CASE("estimator output is reproducible bit for bit") {
  auto a = estimate_probabilities(FieldKind::COMPLEX, 20000, 99, 4);
  auto b = estimate_probabilities(FieldKind::COMPLEX, 20000, 99, 4);
  CHECK(a.p_separable.mean == b.p_separable.mean);
  CHECK(a.moment_estimates.at("diff_1").mean == b.moment_estimates.at("diff_1").mean);
  auto c = estimate_probabilities(FieldKind::COMPLEX, 20000, 100, 4);
  CHECK(a.p_separable.mean != c.p_separable.mean);
}

TEST_CASE("short-run estimates bracket the closed-form targets") {
  const unsigned long n = 100000;
  auto st = estimate_probabilities(FieldKind::COMPLEX, n, 2024, 4);
  CHECK(std::fabs(st.p_separable.mean - 8.0 / 33) < 5 * st.p_separable.se);
  auto d1 = st.moment_estimates.at("diff_1");
  CHECK(std::fabs(d1.mean - (-2.0 / 969)) < 5 * d1.se);
}

TEST_CASE("explicit two-parameter family obeys the PSD guard") {
  auto s = example_family(rat(1, 4), rat(1, 8));
  CHECK(s.det_rho ==
        doctest::Approx(((1.0 / 16 - 1.0 / 64)) * 0.25 * 0.25).epsilon(1e-12));
  CHECK_THROWS_AS(example_family(rat(1, 4), rat(1, 2)), Error);
  CHECK_THROWS_AS(example_family(rat(3, 4), Rational(0)), Error);
}

TEST_CASE("qubit-qutrit estimator reports ranges instead of aborting") {
  auto st = estimate_qubit_qutrit(FieldKind::COMPLEX, 20000, 7, 4);
  CHECK(st.n_samples == 20000);
  CHECK(std::fabs(st.diff_mean.mean - (-11.0 / 1498796)) <
        6 * st.diff_mean.se);
  CHECK(st.det_range_violations == 0);
  CHECK(st.pt_range_violations == 0);
}
