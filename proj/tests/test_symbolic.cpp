#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepprob/sympoly.hpp"

using namespace sepprob;

namespace {
const Rational kHalf = rat(1, 2);
}

TEST_CASE("polynomial arithmetic basics") {
  auto x = MultivariatePolynomial::variable(0, FieldKind::REAL);
  auto y = MultivariatePolynomial::variable(1, FieldKind::REAL);
  auto one = MultivariatePolynomial::constant(Rational(1), FieldKind::REAL);
  auto p = (x + y) * (x - y);
  auto q = x * x - y * y;
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK(p.total_degree() == 2);
  CHECK((x * y + one).term_count() == 2);
  CHECK(x.pow(3).total_degree() == 3);
  CHECK(p.evaluate({Rational(3), Rational(2), 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                    0, 0, 0}) == Rational(5));
}

TEST_CASE("conjugation is an involution and fixes real polynomials") {
  auto z = MultivariatePolynomial::variable(4, FieldKind::COMPLEX);
  CHECK(z.conj().conj() == z);
  CHECK(z.conj() != z);
  auto r = MultivariatePolynomial::variable(4, FieldKind::REAL);
  CHECK(r.conj() == r);
}

TEST_CASE("rho = C*C is unit-trace after the simplex substitution in spirit") {
  // Diagonal of rho sums to x1^2+...+x4^2 plus squared off-diagonal moduli.
  auto rho = build_rho_symbolic(FieldKind::REAL);
  MultivariatePolynomial tr(FieldKind::REAL);
  for (int i = 0; i < 4; ++i) tr = tr + rho[i][i];
  CHECK(tr.total_degree() == 2);
  // Every Cholesky variable appears somewhere in the trace.
  CHECK(tr.term_count() == 10);
}

TEST_CASE("symbolic partial transpose is an involution") {
  auto rho = build_rho_symbolic(FieldKind::COMPLEX);
  auto pt = partial_transpose_symbolic(rho);
  auto back = partial_transpose_symbolic(pt);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(back[i][j] == rho[i][j]);
}

TEST_CASE("determinant difference splits as f1 + x4^2 f2") {
  for (auto field : {FieldKind::REAL, FieldKind::COMPLEX}) {
    auto dec = decompose_pt_diff(field);
    auto recon = dec.f1 + MultivariatePolynomial::variable(3, field).pow(2) *
                              dec.f2;
    CHECK(recon == dec.diff);
    CHECK(dec.f1.substitute_zero(3) == dec.f1);
    CHECK(dec.f2.substitute_zero(3) == dec.f2);
  }
  CHECK(decompose_pt_diff(FieldKind::REAL).diff.term_count() == 74);
  CHECK(decompose_pt_diff(FieldKind::COMPLEX).diff.term_count() == 131);
}

TEST_CASE("expectation functional: linearity and simple moments") {
  auto x1 = MultivariatePolynomial::variable(0, FieldKind::REAL);
  auto p = x1.pow(2), q = x1.pow(4);
  Rational a = expectation(p, ExpectationRule::FULL, kHalf);
  Rational b = expectation(q, ExpectationRule::FULL, kHalf);
  Rational combo = expectation(p * Rational(3) + q * Rational(-2),
                               ExpectationRule::FULL, kHalf);
  CHECK(combo == Rational(3) * a - Rational(2) * b);
  // x1^2 ~ Dirichlet coordinate with shape 1 + 3*alpha: mean (1+3a)/(4+12a).
  CHECK(a == rat(1, 4));
  Rational a1 = expectation(x1.pow(2), ExpectationRule::FULL, Rational(1));
  CHECK(a1 == rat(1, 4));
  // Odd powers integrate to zero.
  CHECK(expectation(x1.pow(3), ExpectationRule::FULL, kHalf) == Rational(0));
}

TEST_CASE("expectation guard rails") {
  auto x1 = MultivariatePolynomial::variable(0, FieldKind::REAL);
  CHECK_THROWS_AS(expectation(x1.pow(2), ExpectationRule::FULL, rat(3, 2)),
                  Error);
  CHECK_THROWS_AS(
      expectation(x1.pow(2), ExpectationRule::WEIGHTED_K, kHalf, 0), Error);
}

TEST_CASE("parity pruning at the final stage changes nothing") {
  auto dec = decompose_pt_diff(FieldKind::REAL);
  Rational full = expectation(dec.diff, ExpectationRule::FULL, kHalf);
  Rational pruned = expectation(dec.diff.prune_odd(), ExpectationRule::FULL,
                                kHalf);
  CHECK(full == pruned);
  CHECK(dec.diff.prune_odd().term_count() <= dec.diff.term_count());
}

TEST_CASE("brute-force moments match the closed forms") {
  for (const Rational& a : {kHalf, Rational(1)})
    for (unsigned long n = 0; n <= 2; ++n)
      for (unsigned long k = 0; k <= 1; ++k) {
        auto rep = verify_f2(n, k, a);
        CHECK(rep.match);
        CHECK(rep.lhs == rep.rhs);
      }
}

TEST_CASE("weighted boundary identity and its corollary hold") {
  for (const Rational& a : {kHalf, Rational(1)}) {
    for (unsigned long k = 1; k <= 2; ++k)
      CHECK(verify_degenerate_conjecture(1, k, a).match);
    CHECK(verify_degenerate_corollary(1, a).match);
    CHECK(verify_degenerate_corollary(2, a).match);
  }
  // Frozen reference values for the n = 2 boundary moment.
  CHECK(verify_degenerate_corollary(2, kHalf).lhs == rat(7, 380160));
  CHECK(verify_degenerate_corollary(2, Rational(1)).lhs == rat(2, 124355));
}

TEST_CASE("verification report serializes with counters populated") {
  auto rep = verify_f2(1, 0, Rational(1));
  CHECK(rep.match);
  CHECK(rep.monomials_nonzero > 0);
  std::string j = rep.to_json();
  CHECK(j.find("\"check\"") != std::string::npos);
  CHECK(j.find("\"match\":true") != std::string::npos);
}
