#include "sepprob/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace sepprob {

const char* moment_variable_name(MomentVariable v) {
  switch (v) {
    case MomentVariable::PT_DET: return "pt_det";
    case MomentVariable::DIFF: return "diff";
    case MomentVariable::DEGENERATE: return "degenerate";
  }
  return "?";
}

MomentVariable moment_variable_from_name(const std::string& name) {
  if (name == "pt_det") return MomentVariable::PT_DET;
  if (name == "diff") return MomentVariable::DIFF;
  if (name == "degenerate") return MomentVariable::DEGENERATE;
  throw Error(ErrorCode::INVALID_ARGUMENT, "unknown moment variable: " + name);
}

namespace {

Rational require_rational_alpha(const DysonIndex& alpha, const char* where) {
  if (!alpha.is_rational())
    throw Error(ErrorCode::INVALID_ARGUMENT,
                std::string(where) + ": requires exact rational alpha");
  return alpha.rational();
}

}  // namespace

ParamValue g_factor(unsigned long k, unsigned long n, const DysonIndex& alpha) {
  const ParamValue& a = alpha.alpha;
  ParamValue kk(Rational((long)k));
  ParamValue num = pochhammer(ParamValue(Rational((long)k + 1)), n) *
                   pochhammer(kk + ParamValue(1L) + a, n) *
                   pochhammer(kk + ParamValue(1L) + a + a, n);
  ParamValue den =
      ParamValue(pow_int(Rational(2), 6 * (long)n)) *
      pochhammer(kk + a * ParamValue(3L) + ParamValue(Rational(3, 2)), n) *
      pochhammer(kk + kk + a * ParamValue(6L) + ParamValue(Rational(5, 2)), 2 * n);
  return num / den;
}

ParamValue h_factor(unsigned long k, unsigned long n, const DysonIndex& alpha) {
  Rational a = require_rational_alpha(alpha, "h_factor");
  long kn = (long)k + (long)n;
  // h is the value at generic k of a rational function; at integer k the
  // series as written has 0/0 factor pairs, so evaluate the k+eps limit.
  std::vector<PerturbedParam> upper = {
      {Rational(-(long)n), 0},
      {Rational(-(long)k), -1},
      {a, 0},
      {a + Rational(1, 2), 0},
      {Rational(-2 * kn - 1) - 5 * a, -2},
  };
  std::vector<PerturbedParam> lower = {
      {Rational(-kn) - a, -1},
      {Rational(-kn) - 2 * a, -1},
      {rat(-kn, 2), Rational(-1, 2)},
      {rat(-(kn - 1), 2), Rational(-1, 2)},
  };
  return ParamValue(terminating_pfq_limit(upper, lower, Rational(1)));
}

ParamValue moment_ptdet(unsigned long n, unsigned long k, const DysonIndex& alpha) {
  return g_factor(k, n, alpha) * h_factor(k, n, alpha);
}

ParamValue moment_ptdet_direct(unsigned long n, const DysonIndex& alpha) {
  Rational a = require_rational_alpha(alpha, "moment_ptdet_direct");
  if (n == 0) return ParamValue(Rational(1));  // both closed-form terms are 1
  long ln = (long)n;
  Rational common_den = pow_int(Rational(2), 6 * ln) *
                        pochhammer(3 * a + Rational(3, 2), n) *
                        pochhammer(6 * a + Rational(5, 2), 2 * n);
  Rational first = Rational(factorial(n)) * pochhammer(a + 1, n) *
                   pochhammer(2 * a + 1, n) / common_den;
  std::vector<Rational> upper = {rat(-(ln - 2), 2), rat(-(ln - 1), 2),
                                 Rational(-ln), a + 1, 2 * a + 1};
  std::vector<Rational> lower = {Rational(1 - ln), Rational(ln + 2) + 5 * a,
                                 Rational(1 - ln) - a, rat(1 - 2 * ln, 2) - a};
  Rational series = terminating_pfq(upper, lower, Rational(1));
  Rational second_front = pochhammer(Rational(-2 * ln - 1) - 5 * a, n) *
                          pochhammer(a, n) * pochhammer(a + Rational(1, 2), n) /
                          (pow_int(Rational(2), 4 * ln) *
                           pochhammer(3 * a + Rational(3, 2), n) *
                           pochhammer(6 * a + Rational(5, 2), 2 * n));
  return ParamValue(first + second_front * series);
}

ParamValue f2_closed(unsigned long n, unsigned long k, const DysonIndex& alpha) {
  const ParamValue& a = alpha.alpha;
  long ln = (long)n, lk = (long)k;
  ParamValue half(Rational(1, 2));
  ParamValue front =
      pochhammer(a, n) * pochhammer(a + half, n) *
      pochhammer(a * ParamValue(5L) + ParamValue(Rational(ln + 2 * lk + 2)), n) /
      (ParamValue(pow_int(Rational(2), 4 * ln)) *
       pochhammer(a * ParamValue(3L) + ParamValue(rat(2 * lk + 3, 2)), n) *
       pochhammer(a * ParamValue(6L) + ParamValue(rat(4 * lk + 5, 2)), 2 * n));
  if (n % 2) front = -front;
  std::vector<ParamValue> upper = {
      ParamValue(rat(-ln, 2)), ParamValue(rat(1 - ln, 2)),
      ParamValue(Rational(lk + 1)) + a, ParamValue(Rational(lk + 1)) + a + a};
  std::vector<ParamValue> lower = {
      ParamValue(Rational(1 - ln)) - a,
      ParamValue(rat(1 - 2 * ln, 2)) - a,
      a * ParamValue(5L) + ParamValue(Rational(ln + 2 * lk + 2))};
  return front * terminating_pfq(upper, lower, ParamValue(1L));
}

ParamValue f2_via_binomial(unsigned long n, unsigned long k, const DysonIndex& alpha) {
  ParamValue sum(Rational(0));
  for (unsigned long j = 0; j <= n; ++j) {
    ParamValue term = ParamValue(Rational(binomial(n, j))) * h_factor(k + n - j, j, alpha);
    if ((n - j) % 2) term = -term;
    sum += term;
  }
  return g_factor(k, n, alpha) * sum;
}

ParamValue degenerate_ratio(unsigned long n, const DysonIndex& alpha) {
  const ParamValue& a = alpha.alpha;
  long ln = (long)n;
  ParamValue num = (a * ParamValue(10L) + ParamValue(Rational(3 * ln + 2))) *
                   (a * ParamValue(12L) + ParamValue(Rational(4 * ln + 3)));
  ParamValue den = (a * ParamValue(12L) + ParamValue(3L)) *
                   (a * ParamValue(10L) + ParamValue(Rational(4 * ln + 2)));
  return num / den;
}

ParamValue degenerate_moment(unsigned long n, const DysonIndex& alpha) {
  const ParamValue& a = alpha.alpha;
  long ln = (long)n;
  ParamValue half(Rational(1, 2));
  ParamValue front =
      pochhammer(a, n) * pochhammer(a + half, n) *
      pochhammer(a * ParamValue(5L) + ParamValue(Rational(ln + 1)), n) *
      (a * ParamValue(10L) + ParamValue(Rational(3 * ln + 2))) /
      (ParamValue(pow_int(Rational(2), 4 * ln)) *
       pochhammer(a * ParamValue(3L) + ParamValue(Rational(3, 2)), n) *
       pochhammer(a * ParamValue(6L) + ParamValue(Rational(3, 2)), 2 * n) *
       (a * ParamValue(10L) + ParamValue(Rational(2 * ln + 2))));
  if (n % 2) front = -front;
  std::vector<ParamValue> upper = {
      ParamValue(rat(-ln, 2)), ParamValue(rat(1 - ln, 2)),
      ParamValue(1L) + a, ParamValue(1L) + a + a};
  std::vector<ParamValue> lower = {
      ParamValue(Rational(1 - ln)) - a,
      ParamValue(rat(1 - 2 * ln, 2)) - a,
      a * ParamValue(5L) + ParamValue(Rational(ln + 2))};
  return front * terminating_pfq(upper, lower, ParamValue(1L));
}

// ---- P(alpha) ----

namespace {

Rational q_poly(const Rational& a) {
  // 185000 a^5 + 779750 a^4 + 1289125 a^3 + 1042015 a^2 + 410694 a + 63000
  Rational r = 185000;
  r = r * a + 779750;
  r = r * a + 1289125;
  r = r * a + 1042015;
  r = r * a + 410694;
  r = r * a + 63000;
  return r;
}

}  // namespace

ParamValue p_concise_term(const DysonIndex& alpha, mpfr_prec_t prec) {
  if (alpha.is_rational() && is_half_integer(alpha.rational())) {
    const Rational& a = alpha.rational();
    Rational pow2 = pow_int(Rational(2), mpz_get_si(Rational(-4 * a - 6).get_num().get_mpz_t()));
    ParamValue gr = gamma_ratio({3 * a + Rational(5, 2), 5 * a + 2},
                                {a + 1, 2 * a + 3, 5 * a + Rational(13, 2)},
                                /*require_exact=*/true);
    return ParamValue(q_poly(a) * pow2 / 3) * gr;
  }
  // General alpha: numeric evaluation.
  BigReal a = alpha.alpha.to_bigreal(prec);
  Rational ar = alpha.is_rational() ? alpha.rational() : Rational(0);
  BigReal pw = alpha.is_rational()
                   ? BigReal::exp2(Rational(-4) * ar - 6, prec)
                   : [&] {
                       BigReal e = BigReal(-4.0, prec) * a - BigReal(6.0, prec);
                       BigReal r(prec);
                       mpfr_exp2(r.raw(), e.raw(), MPFR_RNDN);
                       return r;
                     }();
  BigReal q(prec);
  {
    BigReal r(185000.0, prec);
    for (double c : {779750.0, 1289125.0, 1042015.0, 410694.0, 63000.0})
      r = r * a + BigReal(c, prec);
    q = r;
  }
  BigReal three(3.0, prec), half5(2.5, prec);
  BigReal num = BigReal::gamma(three * a + half5) *
                BigReal::gamma(BigReal(5.0, prec) * a + BigReal(2.0, prec));
  BigReal den = three * BigReal::gamma(a + BigReal(1.0, prec)) *
                BigReal::gamma(BigReal(2.0, prec) * a + BigReal(3.0, prec)) *
                BigReal::gamma(BigReal(5.0, prec) * a + BigReal(6.5, prec));
  return ParamValue(q * pw * num / den);
}

PConciseResult p_concise(const DysonIndex& alpha, const Rational& epsilon,
                         mpfr_prec_t prec) {
  if (epsilon <= 0)
    throw Error(ErrorCode::INVALID_ARGUMENT, "p_concise: epsilon must be > 0");
  PConciseResult res;
  ParamValue sum(Rational(0));
  double eps = epsilon.get_d();
  std::array<double, 3> ratios{2.0, 2.0, 2.0};
  double prev_abs = 0.0;
  constexpr unsigned long kMaxTerms = 20000;
  unsigned long i = 0;
  for (; i < kMaxTerms; ++i) {
    DysonIndex ai(alpha.alpha + ParamValue(Rational((long)i)));
    ParamValue term = p_concise_term(ai, prec);
    sum += term;
    double t = std::fabs(term.to_double());
    if (i > 0 && prev_abs > 0) ratios[i % 3] = t / prev_abs;
    prev_abs = t;
    if (i >= 3) {
      double rhat = std::max({ratios[0], ratios[1], ratios[2]});
      if (rhat < 1.0) {
        double bound = t * rhat / (1.0 - rhat);
        if (bound < eps) {
          res.tail_bound = bound;
          res.tail_ratio = rhat;
          ++i;
          break;
        }
      } else if (i > 50) {
        throw Error(ErrorCode::TAIL_NOT_GEOMETRIC,
                    "p_concise: term ratios failed to stabilize below 1");
      }
    }
  }
  if (i >= kMaxTerms)
    throw Error(ErrorCode::TAIL_NOT_GEOMETRIC, "p_concise: did not converge");
  res.value = sum;
  res.terms_used = i;
  return res;
}

// ---- Closed-form induced-measure moments for other ensembles ----

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly from_factors(const Rational& scale, const std::vector<std::pair<long, long>>& linears) {
  Poly r{scale};
  for (auto [c0, c1] : linears) r = poly_mul(r, Poly{Rational(c0), Rational(c1)});
  return r;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

struct DCase {
  Poly num;
  Poly den;
  Rational shift;
};

Poly from_coeffs_desc(const Rational& scale, std::vector<long long> desc) {
  Poly r;
  for (auto it = desc.rbegin(); it != desc.rend(); ++it) r.push_back(scale * Rational((long)*it));
  return r;
}

const DCase& d_case(EnsembleMomentCase c) {
  // Factors are (c0 + c1 k); numerators carry their overall sign and scale.
  static const std::array<DCase, 9> cases = {{
      // RR_HS_n1: -5(k+2)(k+3)(2k+7) / 96(k+4)(3k+11)(3k+13)(6k+23)(6k+25)
      {from_factors(-5, {{2, 1}, {3, 1}, {7, 2}}),
       from_factors(96, {{4, 1}, {11, 3}, {13, 3}, {23, 6}, {25, 6}}),
       Rational(17, 6)},
      // QQ_HS_n1
      {from_factors(-1, {{3, 1}, {5, 1}, {11, 2}}),
       from_factors(3, {{13, 2}, {19, 3}, {20, 3}, {37, 6}, {41, 6}}),
       Rational(9, 2)},
      // QUAT_HS_n1
      {from_coeffs_desc(-5, {3, 70, 521, 1194}),
       from_factors(6, {{23, 2}, {34, 3}, {35, 3}, {67, 6}, {71, 6}}),
       Rational(70, 9)},
      // RR_HS_n2
      {from_coeffs_desc(5, {24, 900, 10974, 63561, 193602, 302033, 192132}),
       from_factors(82944, {{5, 1}, {11, 3}, {13, 3}, {14, 3}, {16, 3},
                            {23, 6}, {25, 6}, {29, 6}, {31, 6}}),
       Rational(25, 4)},
      // QQ_HS_n2
      {from_coeffs_desc(1, {1, 69, 1315, 11475, 51964, 119856, 112680}),
       from_factors(108, {{15, 2}, {19, 3}, {20, 3}, {22, 3}, {23, 3},
                          {37, 6}, {41, 6}, {43, 6}, {47, 6}}),
       Rational(23, 2)},
      // RR_HS_n3
      {from_coeffs_desc(-35, {24, 976, 16438, 152052, 852799, 2987211,
                              6400915, 7669535, 3920730}),
       from_factors(663552, {{6, 1}, {11, 3}, {13, 3}, {14, 3}, {16, 3},
                             {17, 3}, {19, 3}, {23, 6}, {25, 6}, {29, 6},
                             {31, 6}, {35, 6}, {37, 6}}),
       Rational(61, 12)},
      // RB_BURES_n1
      {from_coeffs_desc(-1, {16, 112, 245, 173}),
       from_factors(128, {{2, 1}, {2, 1}, {3, 2}, {5, 2}, {7, 2}}),
       Rational(7, 3)},
      // QB_BURES_n1
      {from_coeffs_desc(-3, {32, 320, 998, 1005}),
       from_factors(128, {{3, 1}, {4, 1}, {5, 1}, {9, 4}, {11, 4}}),
       Rational(10, 3)},
      // RB_BURES_n2
      {from_coeffs_desc(1, {4182016, 87822336, 745901568, 3257689088LL,
                            8000700112LL, 16462195504LL, 65217922488LL,
                            254319857272LL, 570485963797LL, 660408583199LL,
                            311220769578LL}),
       from_factors(4194304, {{2, 1}, {2, 1}, {3, 1}, {3, 1}, {3, 2},
                              {5, 2}, {5, 2}, {7, 2}, {9, 2}, {11, 2}}),
       Rational(21, 10)},
  }};
  return cases[static_cast<size_t>(c)];
}

}  // namespace

const char* ensemble_moment_case_name(EnsembleMomentCase c) {
  switch (c) {
    case EnsembleMomentCase::RR_HS_n1: return "RR_HS_n1";
    case EnsembleMomentCase::QQ_HS_n1: return "QQ_HS_n1";
    case EnsembleMomentCase::QUAT_HS_n1: return "QUAT_HS_n1";
    case EnsembleMomentCase::RR_HS_n2: return "RR_HS_n2";
    case EnsembleMomentCase::QQ_HS_n2: return "QQ_HS_n2";
    case EnsembleMomentCase::RR_HS_n3: return "RR_HS_n3";
    case EnsembleMomentCase::RB_BURES_n1: return "RB_BURES_n1";
    case EnsembleMomentCase::QB_BURES_n1: return "QB_BURES_n1";
    case EnsembleMomentCase::RB_BURES_n2: return "RB_BURES_n2";
  }
  return "?";
}

Rational ensemble_moment_eval(EnsembleMomentCase c, unsigned long k) {
  const DCase& d = d_case(c);
  Rational x((long)k);
  return poly_eval(d.num, x) / poly_eval(d.den, x);
}

Rational ensemble_cross_alpha_fit(const Rational& a, unsigned long k) {
  Rational kk((long)k);
  Rational num = Rational(-4) * a * (a + 1) * (a + 2) * (2 * a + kk + 1) *
                 (4 * a + kk + 1) * (5 * a + kk + 1) * (8 * a + 2 * kk + 3);
  Rational den = 1;
  for (long i = 6; i <= 11; ++i) den *= 30 * a + 6 * kk + i;
  return num / den;
}

bool shift_root_check(EnsembleMomentCase c, const Rational& r) {
  // Recentring k by r kills the subleading numerator coefficient iff
  // r = a_{d-1} / (d a_d).
  const Poly& num = d_case(c).num;
  size_t d = num.size() - 1;
  return Rational((long)d) * num[d] * r == num[d - 1];
}

Rational ensemble_reported_shift(EnsembleMomentCase c) { return d_case(c).shift; }

// ---- Sequences ----

MomentSequence build_sequence(const MomentSpec& spec, unsigned long n_max) {
  if (n_max < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "build_sequence: n_max >= 1 required");
  MomentSequence seq{spec, {}, Rational(-1, 16), Rational(1, 432)};
  if (spec.variable == MomentVariable::PT_DET)
    seq.interval_hi = Rational(1, 256);
  seq.values.reserve(n_max + 1);
  for (unsigned long n = 0; n <= n_max; ++n) {
    switch (spec.variable) {
      case MomentVariable::PT_DET:
        seq.values.push_back(moment_ptdet(n, spec.k, spec.alpha));
        break;
      case MomentVariable::DIFF:
        seq.values.push_back(f2_closed(n, spec.k, spec.alpha));
        break;
      case MomentVariable::DEGENERATE:
        seq.values.push_back(degenerate_moment(n, spec.alpha));
        break;
    }
  }
  return seq;
}

std::string MomentSequence::to_json() const {
  nlohmann::json j;
  j["schema"] = "sepprob/moments/1";
  j["spec"] = {{"variable", moment_variable_name(spec.variable)},
               {"alpha", spec.alpha.alpha.str()},
               {"k", spec.k}};
  j["interval"] = {to_string(interval_lo), to_string(interval_hi)};
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : values) vals.push_back(v.str());
  j["values"] = vals;
  return j.dump();
}

std::string MomentSequence::to_csv() const {
  std::ostringstream os;
  os << "n,numerator,denominator\n";
  for (size_t n = 0; n < values.size(); ++n) {
    if (!values[n].is_rational())
      throw Error(ErrorCode::INVALID_ARGUMENT,
                  "CSV moment output requires exact rational values");
    const Rational& r = values[n].rational();
    os << n << "," << r.get_num().get_str() << "," << r.get_den().get_str() << "\n";
  }
  return os.str();
}

MomentSequence MomentSequence::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MomentSpec spec(moment_variable_from_name(j.at("spec").at("variable")),
                  DysonIndex(ParamValue(parse_rational(j.at("spec").at("alpha")))),
                  j.at("spec").at("k").get<unsigned long>());
  MomentSequence seq{spec,
                     {},
                     parse_rational(j.at("interval").at(0)),
                     parse_rational(j.at("interval").at(1))};
  for (const auto& v : j.at("values"))
    seq.values.push_back(ParamValue(parse_rational(v.get<std::string>())));
  return seq;
}

}  // namespace sepprob
