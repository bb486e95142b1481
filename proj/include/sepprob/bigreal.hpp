#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "sepprob/rational.hpp"

namespace sepprob {

constexpr mpfr_prec_t kDefaultPrecision = 256;

// Arbitrary-precision float. Each value carries its precision; binary
// operations propagate the minimum of the operand precisions.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigReal(double d, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  BigReal(const Rational& r, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
  }
  BigReal(const BigReal& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, o.precision());
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(BigReal o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }

  std::string to_string(size_t digits = 30) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(std::min(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(std::min(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(std::min(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(std::min(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

  friend bool operator<(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const BigReal& a, const BigReal& b) { return b < a; }
  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) == 0;
  }

  BigReal abs() const {
    BigReal r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  static BigReal gamma(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_gamma(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  // 2^e for rational e.
  static BigReal exp2(const Rational& e, mpfr_prec_t prec) {
    BigReal ex(e, prec), r(prec);
    mpfr_exp2(r.v_, ex.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

}  // namespace sepprob
