#include "sepprob/legendre.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace sepprob {

namespace {

ParamValue abs_value(const ParamValue& v) {
  if (v.is_rational())
    return ParamValue(v.rational() < 0 ? Rational(-v.rational()) : v.rational());
  return ParamValue(v.bigreal().abs());
}

// Legendre values P_0..P_n at x via the three-term recurrence.
std::vector<ParamValue> legendre_values(const ParamValue& x, unsigned long n) {
  std::vector<ParamValue> p;
  p.reserve(n + 1);
  p.push_back(ParamValue(Rational(1)));
  if (n == 0) return p;
  p.push_back(x);
  for (unsigned long j = 1; j < n; ++j) {
    ParamValue next = (ParamValue(Rational(2 * (long)j + 1)) * x * p[j] -
                       ParamValue(Rational((long)j)) * p[j - 1]) /
                      ParamValue(Rational((long)j + 1));
    p.push_back(next);
  }
  return p;
}

}  // namespace

std::vector<std::vector<Rational>> shifted_legendre_coefficients(
    unsigned long degree, const Interval& interval) {
  // x(t) = (2t - lo - hi)/(hi - lo), a linear polynomial in t.
  Rational w = interval.width();
  Rational x0 = (-interval.lo - interval.hi) / w;
  Rational x1 = Rational(2) / w;

  std::vector<std::vector<Rational>> rows;
  rows.reserve(degree + 1);
  rows.push_back({Rational(1)});
  if (degree == 0) return rows;
  rows.push_back({x0, x1});
  for (unsigned long j = 1; j < degree; ++j) {
    const auto& pj = rows[j];
    const auto& pm = rows[j - 1];
    std::vector<Rational> next(pj.size() + 1, Rational(0));
    Rational a = rat(2 * (long)j + 1, (long)j + 1);
    for (size_t i = 0; i < pj.size(); ++i) {
      next[i] += a * x0 * pj[i];
      next[i + 1] += a * x1 * pj[i];
    }
    Rational b = rat((long)j, (long)j + 1);
    for (size_t i = 0; i < pm.size(); ++i) next[i] -= b * pm[i];
    rows.push_back(std::move(next));
  }
  return rows;
}

LegendreExpansion fit_density(const MomentSequence& moments, unsigned long degree,
                              ReconPrecision precision) {
  const auto& mu = moments.values;
  if (degree >= mu.size())
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "fit_density: need moments 0..degree");
  if (!(mu[0] == ParamValue(Rational(1))))
    throw Error(ErrorCode::INVALID_ARGUMENT, "fit_density: moments not normalized");

  Interval interval(moments.interval_lo, moments.interval_hi);
  auto table = shifted_legendre_coefficients(degree, interval);
  LegendreExpansion exp{interval, {}, degree, precision};
  exp.coefficients.reserve(degree + 1);

  if (!precision) {
    for (unsigned long j = 0; j <= degree; ++j) {
      Rational sum = 0;
      for (size_t i = 0; i < table[j].size(); ++i) {
        if (!mu[i].is_rational())
          throw Error(ErrorCode::INVALID_ARGUMENT,
                      "fit_density: exact mode requires rational moments");
        sum += table[j][i] * mu[i].rational();
      }
      sum *= rat(2 * (long)j + 1, 1) / interval.width();
      exp.coefficients.push_back(ParamValue(sum));
    }
    return exp;
  }

  mpfr_prec_t prec = *precision;
  for (unsigned long j = 0; j <= degree; ++j) {
    BigReal sum(0.0, prec), sum_abs(0.0, prec);
    for (size_t i = 0; i < table[j].size(); ++i) {
      BigReal term = BigReal(table[j][i], prec) * mu[i].to_bigreal(prec);
      sum += term;
      sum_abs += term.abs();
    }
    // Accumulated rounding is about sum_abs * 2^-prec; refuse to continue
    // once that absolute error could reach the 1e-19 scale.
    if (!sum_abs.is_zero() && mpfr_get_exp(sum_abs.raw()) - (long)prec > -64)
      throw Error(ErrorCode::PRECISION_TOO_LOW,
                  "fit_density: cancellation exceeds working precision at order " +
                      std::to_string(j));
    sum *= BigReal(Rational(2 * (long)j + 1) / interval.width(), prec);
    exp.coefficients.push_back(ParamValue(sum));
  }
  return exp;
}

ParamValue LegendreExpansion::evaluate(const ParamValue& t) const {
  ParamValue x = (ParamValue(Rational(2)) * t -
                  ParamValue(interval.lo + interval.hi)) /
                 ParamValue(interval.width());
  auto p = legendre_values(x, degree);
  ParamValue sum(Rational(0));
  for (unsigned long j = 0; j <= degree; ++j) sum += coefficients[j] * p[j];
  return sum;
}

ParamValue prob_between(const LegendreExpansion& expansion, const Rational& a,
                        const Rational& b) {
  const Interval& iv = expansion.interval;
  if (!(iv.lo <= a && a < b && b <= iv.hi))
    throw Error(ErrorCode::INVALID_ARGUMENT, "prob_between: bad subinterval");
  auto map = [&](const Rational& t) {
    Rational x = (2 * t - iv.lo - iv.hi) / iv.width();
    return expansion.precision ? ParamValue(BigReal(x, *expansion.precision))
                               : ParamValue(x);
  };
  unsigned long n = expansion.degree;
  auto pa = legendre_values(map(a), n + 1);
  auto pb = legendre_values(map(b), n + 1);
  // Integrate P_j dx via (P_{j+1} - P_{j-1})/(2j+1); dt = (width/2) dx.
  ParamValue total = expansion.coefficients[0] * ParamValue(b - a);
  ParamValue half_w(iv.width() / 2);
  for (unsigned long j = 1; j <= n; ++j) {
    ParamValue inc = (pb[j + 1] - pb[j - 1]) - (pa[j + 1] - pa[j - 1]);
    total += expansion.coefficients[j] * half_w * inc /
             ParamValue(Rational(2 * (long)j + 1));
  }
  return total;
}

ReconstructionReport separability_ratio(const DysonIndex& alpha,
                                        MomentVariable variable,
                                        unsigned long degree,
                                        ReconPrecision precision) {
  if (degree < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "separability_ratio: degree >= 1");
  if (variable == MomentVariable::PT_DET)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "separability_ratio: use the difference or boundary variable");
  auto t0 = std::chrono::steady_clock::now();
  MomentSequence seq = build_sequence(MomentSpec(variable, alpha, 0), degree);
  LegendreExpansion exp = fit_density(seq, degree, precision);
  ParamValue prob = prob_between(exp, Rational(0), seq.interval_hi);
  PConciseResult p = p_concise(alpha, Rational(1, 10000000000000L));
  ReconstructionReport rep{std::move(exp), prob, p.value, prob / p.value,
                           degree + 1, 0.0};
  rep.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

std::string ReconstructionReport::to_json(const MomentSpec& spec) const {
  nlohmann::json j;
  j["schema"] = "sepprob/reconstruction/1";
  j["alpha"] = spec.alpha.alpha.str();
  j["variable"] = moment_variable_name(spec.variable);
  j["degree"] = expansion.degree;
  j["precision"] =
      expansion.precision ? nlohmann::json((long)*expansion.precision)
                          : nlohmann::json("exact");
  j["prob_positive"] = prob_positive.to_double();
  j["p_alpha"] = p_alpha.to_double();
  j["ratio"] = ratio_to_p_alpha.to_double();
  j["runtime_ms"] = runtime_ms;
  return j.dump();
}

MomentSequence transform_m(const MomentSequence& moments, const ParamValue& gamma) {
  if (gamma.sign() <= 0)
    throw Error(ErrorCode::INVALID_ARGUMENT, "transform_m: gamma > 0 required");
  MomentSequence out = moments;
  for (size_t n = 0; n < out.values.size(); ++n)
    out.values[n] = gamma / (gamma + ParamValue(Rational((long)n))) * out.values[n];
  return out;
}

MomentSequence mixture_transform(const MomentSequence& moments,
                                 const ParamValue& gamma, const ParamValue& delta) {
  if (gamma.sign() <= 0)
    throw Error(ErrorCode::INVALID_ARGUMENT, "mixture_transform: gamma > 0 required");
  ParamValue one(Rational(1));
  if (delta.sign() <= 0 || (one - delta).sign() <= 0)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "mixture_transform: 0 < delta < 1 required");
  MomentSequence out = moments;
  for (size_t n = 0; n < out.values.size(); ++n) {
    ParamValue nn{Rational((long)n)};
    out.values[n] = (gamma + delta * nn) / (gamma + nn) * out.values[n];
  }
  return out;
}

EqualProbabilityReport equal_probability_check(const DysonIndex& alpha,
                                               unsigned long degree) {
  if (degree < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "equal_probability_check: degree >= 1");
  const ParamValue& a = alpha.alpha;
  MomentSequence boundary =
      build_sequence(MomentSpec(MomentVariable::DEGENERATE, alpha, 0), degree);
  MomentSequence diff =
      build_sequence(MomentSpec(MomentVariable::DIFF, alpha, 0), degree);
  MomentSequence u1 =
      transform_m(boundary, a * ParamValue(3L) + ParamValue(Rational(3, 4)));
  MomentSequence u2 = mixture_transform(
      diff, (ParamValue(1L) + a * ParamValue(5L)) / ParamValue(2L),
      ParamValue(Rational(3, 4)));
  for (size_t n = 0; n < u1.values.size(); ++n) {
    if (!(u1.values[n] == u2.values[n]))
      throw Error(ErrorCode::MOMENT_MISMATCH,
                  "equal_probability_check: sequences differ at n = " +
                      std::to_string(n));
  }
  ReconPrecision prec = default_reconstruction_precision(degree);
  LegendreExpansion e1 = fit_density(u1, degree, prec);
  LegendreExpansion e2 = fit_density(u2, degree, prec);
  ParamValue p1 = prob_between(e1, Rational(0), u1.interval_hi);
  ParamValue p2 = prob_between(e2, Rational(0), u2.interval_hi);
  return EqualProbabilityReport{true, (unsigned long)u1.values.size(), p1, p2,
                                abs_value(p1 - p2)};
}

std::string density_curve_csv(const LegendreExpansion& expansion,
                              unsigned long points) {
  if (points < 2)
    throw Error(ErrorCode::INVALID_ARGUMENT, "density_curve_csv: points >= 2");
  std::ostringstream os;
  os << "x,f\n";
  for (unsigned long i = 0; i < points; ++i) {
    Rational t = expansion.interval.lo +
                 expansion.interval.width() * rat((long)i, (long)points - 1);
    ParamValue v = expansion.evaluate(
        expansion.precision ? ParamValue(BigReal(t, *expansion.precision))
                            : ParamValue(t));
    os << t.get_d() << "," << v.to_double() << "\n";
  }
  return os.str();
}

}  // namespace sepprob
