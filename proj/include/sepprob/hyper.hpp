#pragma once

#include <vector>

#include "sepprob/errors.hpp"
#include "sepprob/param_value.hpp"

namespace sepprob {

// Rising factorial (x)_n = x(x+1)...(x+n-1).
inline Rational pochhammer(const Rational& x, unsigned long n) {
  Rational acc = 1, f = x;
  for (unsigned long i = 0; i < n; ++i) {
    acc *= f;
    f += 1;
  }
  return acc;
}

inline BigReal pochhammer(const BigReal& x, unsigned long n) {
  BigReal acc(1.0, x.precision()), f = x;
  const BigReal one(1.0, x.precision());
  for (unsigned long i = 0; i < n; ++i) {
    acc *= f;
    f += one;
  }
  return acc;
}

ParamValue pochhammer(const ParamValue& x, unsigned long n);

// Product of Gammas over product of Gammas, reduced exactly when possible.
// Integer arguments are exact factorials; non-integer arguments reduce in
// pairs sharing a fractional part via Pochhammer walks. Returns BigReal at
// `prec` when exact reduction is impossible; throws UNPAIRED_HALF_INTEGER
// instead if `require_exact`.
ParamValue gamma_ratio(const std::vector<Rational>& numerator_args,
                       const std::vector<Rational>& denominator_args,
                       bool require_exact = false,
                       mpfr_prec_t prec = kDefaultPrecision);

// Terminating pFq at `argument`. Requires some upper parameter to be a
// nonpositive integer; sums to the smallest such truncation index.
Rational terminating_pfq(const std::vector<Rational>& upper,
                         const std::vector<Rational>& lower,
                         const Rational& argument);
ParamValue terminating_pfq(const std::vector<ParamValue>& upper,
                           const std::vector<ParamValue>& lower,
                           const ParamValue& argument);

// A hypergeometric parameter perturbed to first order: value + slope*eps.
// Used to evaluate series at parameter points where an upper and a lower
// Pochhammer vanish together; the series is the eps -> 0 limit of the
// generic-parameter rational function.
struct PerturbedParam {
  Rational value;
  Rational slope;
};

// Terminating pFq in the eps -> 0 limit. Termination comes only from upper
// parameters with zero slope that are nonpositive integers.
Rational terminating_pfq_limit(const std::vector<PerturbedParam>& upper,
                               const std::vector<PerturbedParam>& lower,
                               const Rational& argument);

// Pochhammer convolution identity, both sides.
// lemma_sum:    sum_{j=0}^n (-n)_j/j! (-j)_m (x+j)_m
// lemma_closed: (-1)^m (x)_{2m}/(x)_n (-n)_m (-m)_{n-m}  for 0<=m<=n, else 0
Rational lemma_sum(unsigned long n, unsigned long m, const Rational& x);
Rational lemma_closed(unsigned long n, unsigned long m, const Rational& x);

}  // namespace sepprob
