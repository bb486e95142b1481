#include "sepprob/hyper.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace sepprob {

ParamValue pochhammer(const ParamValue& x, unsigned long n) {
  if (x.is_rational()) return ParamValue(pochhammer(x.rational(), n));
  return ParamValue(pochhammer(x.bigreal(), n));
}

namespace {

// Gamma(target)/Gamma(base) for target-base a nonnegative integer:
// equals (base)_{target-base}.
Rational gamma_quotient_walk(const Rational& num, const Rational& den) {
  Rational d = num - den;
  unsigned long steps = mpz_get_ui(d.get_num().get_mpz_t());
  if (d >= 0) return pochhammer(den, steps);
  Rational inv = pochhammer(num, mpz_get_ui(Rational(-d).get_num().get_mpz_t()));
  return Rational(1) / inv;
}

Rational exact_integer_gamma(const Rational& a) {
  // Gamma(m) = (m-1)! for positive integer m.
  unsigned long m = mpz_get_ui(a.get_num().get_mpz_t());
  return Rational(factorial(m - 1));
}

}  // namespace

ParamValue gamma_ratio(const std::vector<Rational>& numerator_args,
                       const std::vector<Rational>& denominator_args,
                       bool require_exact, mpfr_prec_t prec) {
  if (numerator_args.empty() || denominator_args.empty())
    throw Error(ErrorCode::INVALID_ARGUMENT, "gamma_ratio: empty argument list");
  for (const auto* list : {&numerator_args, &denominator_args})
    for (const Rational& a : *list)
      if (is_nonpositive_integer(a))
        throw Error(ErrorCode::POLE, "gamma_ratio: Gamma pole at " + to_string(a));

  // Group by fractional part; integer arguments are individually exact.
  Rational result = 1;
  std::map<Rational, std::pair<std::vector<Rational>, std::vector<Rational>>> classes;
  for (const Rational& a : numerator_args) {
    if (is_integer(a)) {
      result *= exact_integer_gamma(a);
    } else {
      Rational frac = a - Rational(mpz_class(a.get_num() / a.get_den()));
      if (frac < 0) frac += 1;
      classes[frac].first.push_back(a);
    }
  }
  for (const Rational& a : denominator_args) {
    if (is_integer(a)) {
      result /= exact_integer_gamma(a);
    } else {
      Rational frac = a - Rational(mpz_class(a.get_num() / a.get_den()));
      if (frac < 0) frac += 1;
      classes[frac].second.push_back(a);
    }
  }

  bool exact = true;
  for (auto& [frac, lists] : classes) {
    auto& [num, den] = lists;
    size_t pairs = std::min(num.size(), den.size());
    for (size_t i = 0; i < pairs; ++i) result *= gamma_quotient_walk(num[i], den[i]);
    if (num.size() != den.size()) exact = false;
  }
  if (exact) return ParamValue(result);

  if (require_exact)
    throw Error(ErrorCode::UNPAIRED_HALF_INTEGER,
                "gamma_ratio: unpaired non-integer arguments; exact reduction impossible");

  // Leftover unpaired non-integer Gammas evaluated numerically.
  BigReal out(result, prec);
  for (auto& [frac, lists] : classes) {
    auto& [num, den] = lists;
    size_t pairs = std::min(num.size(), den.size());
    for (size_t i = pairs; i < num.size(); ++i)
      out *= BigReal::gamma(BigReal(num[i], prec));
    for (size_t i = pairs; i < den.size(); ++i)
      out /= BigReal::gamma(BigReal(den[i], prec));
  }
  return ParamValue(out);
}

namespace {

// Smallest truncation index supplied by upper parameters, or -1.
long termination_index(const std::vector<Rational>& upper) {
  long best = -1;
  for (const Rational& u : upper) {
    if (is_nonpositive_integer(u)) {
      long m = -static_cast<long>(mpz_get_si(u.get_num().get_mpz_t()));
      if (best < 0 || m < best) best = m;
    }
  }
  return best;
}

}  // namespace

Rational terminating_pfq(const std::vector<Rational>& upper,
                         const std::vector<Rational>& lower,
                         const Rational& argument) {
  long m = termination_index(upper);
  if (m < 0)
    throw Error(ErrorCode::NON_TERMINATING,
                "terminating_pfq: no nonpositive-integer upper parameter");
  Rational sum = 0, term = 1;
  for (long j = 0; j <= m; ++j) {
    sum += term;
    if (j == m) break;
    // term_{j+1} = term_j * prod(u+j)/prod(l+j) / (j+1) * z
    for (const Rational& u : upper) term *= u + j;
    for (const Rational& l : lower) {
      Rational f = l + j;
      if (f == 0)
        throw Error(ErrorCode::LOWER_PARAM_POLE,
                    "terminating_pfq: lower parameter " + to_string(l) +
                        " hits a pole before termination");
      term /= f;
    }
    term *= argument;
    term /= j + 1;
  }
  return sum;
}

ParamValue terminating_pfq(const std::vector<ParamValue>& upper,
                           const std::vector<ParamValue>& lower,
                           const ParamValue& argument) {
  bool all_rational = argument.is_rational();
  for (const auto& u : upper) all_rational = all_rational && u.is_rational();
  for (const auto& l : lower) all_rational = all_rational && l.is_rational();
  if (all_rational) {
    std::vector<Rational> up, lo;
    for (const auto& u : upper) up.push_back(u.rational());
    for (const auto& l : lower) lo.push_back(l.rational());
    return ParamValue(terminating_pfq(up, lo, argument.rational()));
  }
  // Termination still requires an exact nonpositive-integer upper parameter.
  long m = -1;
  mpfr_prec_t prec = MPFR_PREC_MAX;
  for (const auto& u : upper) {
    if (u.is_rational() && is_nonpositive_integer(u.rational())) {
      long cand = -mpz_get_si(u.rational().get_num().get_mpz_t());
      if (m < 0 || cand < m) m = cand;
    }
    if (!u.is_rational()) prec = std::min(prec, u.bigreal().precision());
  }
  for (const auto& l : lower)
    if (!l.is_rational()) prec = std::min(prec, l.bigreal().precision());
  if (!argument.is_rational()) prec = std::min(prec, argument.bigreal().precision());
  if (prec == MPFR_PREC_MAX) prec = kDefaultPrecision;
  if (m < 0)
    throw Error(ErrorCode::NON_TERMINATING,
                "terminating_pfq: no nonpositive-integer upper parameter");
  BigReal sum(0.0, prec), term(1.0, prec), z = argument.to_bigreal(prec);
  for (long j = 0; j <= m; ++j) {
    sum += term;
    if (j == m) break;
    BigReal jj(static_cast<double>(j), prec);
    for (const auto& u : upper) term *= u.to_bigreal(prec) + jj;
    for (const auto& l : lower) {
      BigReal f = l.to_bigreal(prec) + jj;
      if (f.is_zero())
        throw Error(ErrorCode::LOWER_PARAM_POLE,
                    "terminating_pfq: lower parameter pole before termination");
      term /= f;
    }
    term *= z;
    term /= BigReal(static_cast<double>(j + 1), prec);
  }
  return ParamValue(sum);
}

Rational terminating_pfq_limit(const std::vector<PerturbedParam>& upper,
                               const std::vector<PerturbedParam>& lower,
                               const Rational& argument) {
  long m = -1;
  for (const auto& u : upper) {
    if (u.slope == 0 && is_nonpositive_integer(u.value)) {
      long cand = -mpz_get_si(u.value.get_num().get_mpz_t());
      if (m < 0 || cand < m) m = cand;
    }
  }
  if (m < 0)
    throw Error(ErrorCode::NON_TERMINATING,
                "terminating_pfq_limit: no exact nonpositive-integer upper parameter");

  // Each term is tracked as coeff * eps^order; only order-0 terms survive
  // the limit. A zero-value zero-slope upper factor kills all later terms.
  Rational sum = 0;
  Rational coeff = 1;
  long order = 0;
  bool dead = false;
  for (long j = 0; j <= m; ++j) {
    if (!dead && order == 0) sum += coeff;
    if (j == m) break;
    for (const auto& u : upper) {
      Rational v = u.value + j;
      if (v != 0) {
        coeff *= v;
      } else if (u.slope != 0) {
        coeff *= u.slope;
        ++order;
      } else {
        dead = true;  // Pochhammer is identically zero from here on
      }
    }
    if (dead) break;
    for (const auto& l : lower) {
      Rational v = l.value + j;
      if (v != 0) {
        coeff /= v;
      } else if (l.slope != 0) {
        coeff /= l.slope;
        --order;
      } else {
        throw Error(ErrorCode::LOWER_PARAM_POLE,
                    "terminating_pfq_limit: exact lower-parameter pole");
      }
    }
    if (order < 0)
      throw Error(ErrorCode::LOWER_PARAM_POLE,
                  "terminating_pfq_limit: term diverges in the limit");
    coeff *= argument;
    coeff /= j + 1;
  }
  return sum;
}

Rational lemma_sum(unsigned long n, unsigned long m, const Rational& x) {
  Rational sum = 0;
  for (unsigned long j = 0; j <= n; ++j) {
    Rational t = pochhammer(Rational(-(long)n), j) / Rational(factorial(j));
    t *= pochhammer(Rational(-(long)j), m);
    t *= pochhammer(x + (long)j, m);
    sum += t;
  }
  return sum;
}

Rational lemma_closed(unsigned long n, unsigned long m, const Rational& x) {
  if (m > n) return 0;
  Rational xn = pochhammer(x, n);
  if (xn == 0) throw Error(ErrorCode::POLE, "lemma_closed: (x)_n = 0");
  Rational r = pochhammer(x, 2 * m) / xn;
  r *= pochhammer(Rational(-(long)n), m);
  r *= pochhammer(Rational(-(long)m), n - m);
  if (m % 2) r = -r;
  return r;
}

}  // namespace sepprob
