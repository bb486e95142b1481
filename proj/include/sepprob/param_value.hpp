#pragma once

#include <variant>

#include "sepprob/bigreal.hpp"
#include "sepprob/rational.hpp"

namespace sepprob {

// Exact-or-approximate scalar. Rational inputs stay rational end-to-end;
// any operation touching a BigReal demotes the result to BigReal.
class ParamValue {
 public:
  ParamValue() : v_(Rational(0)) {}
  ParamValue(Rational r) : v_(std::move(r)) {}
  ParamValue(long n) : v_(Rational(n)) {}
  ParamValue(BigReal b) : v_(std::move(b)) {}

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const BigReal& bigreal() const { return std::get<BigReal>(v_); }

  BigReal to_bigreal(mpfr_prec_t prec = kDefaultPrecision) const {
    if (is_rational()) return BigReal(rational(), prec);
    return bigreal();
  }
  double to_double() const {
    if (is_rational()) return rational().get_d();
    return bigreal().to_double();
  }
  int sign() const {
    if (is_rational()) return sgn(rational());
    return bigreal().sign();
  }

  std::string str() const {
    return is_rational() ? to_string(rational()) : bigreal().to_string();
  }

  friend ParamValue operator+(const ParamValue& a, const ParamValue& b) {
    return apply(a, b, [](auto&& x, auto&& y) { return x + y; });
  }
  friend ParamValue operator-(const ParamValue& a, const ParamValue& b) {
    return apply(a, b, [](auto&& x, auto&& y) { return x - y; });
  }
  friend ParamValue operator*(const ParamValue& a, const ParamValue& b) {
    return apply(a, b, [](auto&& x, auto&& y) { return x * y; });
  }
  friend ParamValue operator/(const ParamValue& a, const ParamValue& b) {
    return apply(a, b, [](auto&& x, auto&& y) { return x / y; });
  }
  ParamValue operator-() const {
    if (is_rational()) return ParamValue(Rational(-rational()));
    return ParamValue(-bigreal());
  }
  ParamValue& operator+=(const ParamValue& o) { return *this = *this + o; }
  ParamValue& operator*=(const ParamValue& o) { return *this = *this * o; }

  friend bool operator==(const ParamValue& a, const ParamValue& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    mpfr_prec_t p = std::min(a.is_rational() ? MPFR_PREC_MAX : a.bigreal().precision(),
                             b.is_rational() ? MPFR_PREC_MAX : b.bigreal().precision());
    return a.to_bigreal(p) == b.to_bigreal(p);
  }

 private:
  template <class F>
  static ParamValue apply(const ParamValue& a, const ParamValue& b, F f) {
    if (a.is_rational() && b.is_rational())
      return ParamValue(Rational(f(a.rational(), b.rational())));
    mpfr_prec_t p = std::min(a.is_rational() ? MPFR_PREC_MAX : a.bigreal().precision(),
                             b.is_rational() ? MPFR_PREC_MAX : b.bigreal().precision());
    return ParamValue(f(a.to_bigreal(p), b.to_bigreal(p)));
  }

  std::variant<Rational, BigReal> v_;
};

}  // namespace sepprob
