#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sepprob/moments.hpp"
#include "sepprob/random_states.hpp"

namespace sepprob {

// Exponent vector over the Cholesky variables: slots 0..3 are the diagonal
// x1..x4 (real), 4..9 the off-diagonal x5..x10, 10..15 their conjugates
// (complex mode only).
using Mono = std::array<std::uint8_t, 16>;

struct MonoHash {
  size_t operator()(const Mono& m) const {
    size_t h = 1469598103934665603ull;
    for (auto e : m) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

class MultivariatePolynomial {
 public:
  using TermMap = std::unordered_map<Mono, Rational, MonoHash>;

  explicit MultivariatePolynomial(FieldKind mode = FieldKind::REAL)
      : mode_(mode) {}

  static MultivariatePolynomial constant(const Rational& c, FieldKind mode);
  static MultivariatePolynomial variable(int slot, FieldKind mode);

  FieldKind mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  void add_term(const Mono& m, const Rational& c);

  MultivariatePolynomial operator+(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator-(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator*(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator*(const Rational& c) const;
  MultivariatePolynomial operator-() const;
  bool operator==(const MultivariatePolynomial& o) const;

  MultivariatePolynomial conj() const;  // swaps x_j with conj x_j
  MultivariatePolynomial substitute_zero(int slot) const;
  MultivariatePolynomial pow(unsigned n) const;

  // Drops monomials whose expectation vanishes by parity (any odd real
  // exponent; unpaired x_j/conj x_j in complex mode). Sound only when no
  // further multiplications follow: odd x odd cross terms are even.
  MultivariatePolynomial prune_odd() const;

  Rational evaluate(const std::vector<Rational>& point) const;

 private:
  FieldKind mode_;
  TermMap terms_;
};

enum class ExpectationRule { FULL, CONDITIONAL_X4, WEIGHTED_K };

// Exact monomial-integral functional over the Cholesky simplex law.
// WEIGHTED_K returns the (x1 x2 x3)^{2k} x4^{2k-2}-weighted expectation ratio.
Rational expectation(const MultivariatePolynomial& p, ExpectationRule rule,
                     const Rational& alpha, unsigned long k = 0);

// rho = C*C with symbolic upper-triangular C.
std::vector<std::vector<MultivariatePolynomial>> build_rho_symbolic(
    FieldKind field);

MultivariatePolynomial det_poly(
    const std::vector<std::vector<MultivariatePolynomial>>& m);

std::vector<std::vector<MultivariatePolynomial>> partial_transpose_symbolic(
    const std::vector<std::vector<MultivariatePolynomial>>& m);

// |rho^PT| - |rho| = f1 + x4^2 f2 with f1, f2 free of x4.
struct PtDiffDecomposition {
  MultivariatePolynomial f1, f2;
  MultivariatePolynomial diff;  // the full difference polynomial
};
PtDiffDecomposition decompose_pt_diff(FieldKind field);

struct VerificationReport {
  std::string check;
  unsigned long n = 0, k = 0;
  Rational alpha;
  Rational lhs, rhs;
  bool match = false;
  size_t monomials_nonzero = 0, monomials_pruned = 0;
  double elapsed_s = 0;

  std::string to_json() const;
};

// Brute-force <|rho|^k (|rho^PT|-|rho|)^n> / <|rho|^k> against the closed form.
VerificationReport verify_f2(unsigned long n, unsigned long k,
                             const Rational& alpha);

// Weighted-expectation identity behind the boundary-moment formula.
VerificationReport verify_degenerate_conjecture(unsigned long n, unsigned long k,
                                                const Rational& alpha);

// <f1^n> on the x4 = 0 slice against the boundary closed form.
VerificationReport verify_degenerate_corollary(unsigned long n,
                                               const Rational& alpha);

}  // namespace sepprob
