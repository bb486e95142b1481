#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepprob/moments.hpp"

using namespace sepprob;

namespace {
DysonIndex idx(long num, long den = 1) {
  return DysonIndex{ParamValue(rat(num, den))};
}
Rational f2r(unsigned long n, unsigned long k, const DysonIndex& a) {
  return f2_closed(n, k, a).rational();
}
}  // namespace

TEST_CASE("closed-form difference moments at fixed reference points") {
  DysonIndex half = idx(1, 2), one = idx(1);
  CHECK(f2r(1, 0, half) == rat(-1, 624));
  CHECK(f2r(1, 1, half) == rat(-1, 1088));
  CHECK(f2r(1, 2, half) == rat(-1, 1680));
  CHECK(f2r(2, 0, half) == rat(7, 622336));
  CHECK(f2r(2, 1, half) == rat(13, 3046400));
  CHECK(f2r(2, 2, half) == rat(11, 5472000));
  CHECK(f2r(1, 0, one) == rat(-2, 969));
  CHECK(f2r(1, 1, one) == rat(-5, 3542));
  CHECK(f2r(1, 2, one) == rat(-1, 975));
  CHECK(f2r(2, 0, one) == rat(20, 1716099));
  CHECK(f2r(2, 1, one) == rat(61, 10360350));
  CHECK(f2r(2, 2, one) == rat(7, 2103660));
  CHECK(f2r(0, 0, one) == Rational(1));
}

TEST_CASE("binomial convolution route equals the closed form") {
  for (const Rational& a : {rat(1, 2), Rational(1), rat(3, 2)})
    for (unsigned long n = 0; n <= 4; ++n)
      for (unsigned long k = 0; k <= 3; ++k) {
        DysonIndex ai{ParamValue(a)};
        CHECK(f2_via_binomial(n, k, ai).rational() == f2r(n, k, ai));
      }
}

TEST_CASE("partial-transpose determinant moments") {
  DysonIndex half = idx(1, 2), one = idx(1);
  CHECK(moment_ptdet(1, 0, half).rational() == rat(-1, 858));
  CHECK(moment_ptdet(1, 0, one).rational() == rat(-7, 3876));
  CHECK(moment_ptdet(2, 0, half).rational() == rat(27, 2489344));
  CHECK(moment_ptdet(2, 0, one).rational() == rat(1, 90321));
  CHECK(moment_ptdet(3, 0, half).rational() == rat(-8363, 66216550400));
  CHECK(moment_ptdet(3, 0, one).rational() == rat(-401, 4015671660));
  CHECK(moment_ptdet(4, 0, half).rational() == rat(21859, 10443295948800));
  CHECK(moment_ptdet(4, 0, one).rational() == rat(991, 802241960520));
}

TEST_CASE("independent two-term evaluation agrees at k = 0") {
  for (const Rational& a : {rat(1, 2), Rational(1), Rational(2)})
    for (unsigned long n = 0; n <= 6; ++n) {
      DysonIndex ai{ParamValue(a)};
      CHECK(moment_ptdet_direct(n, ai) == moment_ptdet(n, 0, ai).rational());
    }
}

TEST_CASE("boundary moments and their successive ratio") {
  DysonIndex half = idx(1, 2), one = idx(1);
  CHECK(degenerate_moment(1, half).rational() == rat(-5, 2376));
  CHECK(degenerate_moment(1, one).rational() == rat(-1, 408));
  for (unsigned long n = 1; n <= 10; ++n) {
    Rational lhs = degenerate_moment(n, half).rational() / f2r(n, 0, half);
    Rational rhs = rat((long)(3 * n + 7) * (long)(4 * n + 9),
                       9 * (long)(4 * n + 7));
    CHECK(lhs == rhs);
  }
  for (unsigned long n = 1; n <= 6; ++n) {
    Rational step = degenerate_moment(n + 1, one).rational() /
                    degenerate_moment(n, one).rational() /
                    (f2r(n + 1, 0, one) / f2r(n, 0, one));
    CHECK(step == degenerate_ratio(n + 1, one).rational() /
                      degenerate_ratio(n, one).rational());
  }
}

TEST_CASE("series summation reproduces the known closed probabilities") {
  struct Known { Rational alpha, p; } cases[] = {
      {rat(1, 2), rat(29, 64)},
      {Rational(1), rat(8, 33)},
      {rat(3, 2), rat(36061, 262144)},
      {Rational(2), rat(26, 323)},
      {Rational(4), rat(44482, 4091349)},
  };
  for (const auto& c : cases) {
    auto res = p_concise(DysonIndex{ParamValue(c.alpha)},
                         Rational(1, 1000000000000000L));
    CHECK(std::fabs(res.value.to_double() - c.p.get_d()) < 1e-13);
    CHECK(res.tail_ratio == doctest::Approx(27.0 / 64.0).epsilon(0.05));
  }
}

TEST_CASE("series terms are exact rationals for half-integer index") {
  auto res = p_concise(idx(1, 2), Rational(1, 1000000000000L));
  CHECK(res.value.is_rational());
}

TEST_CASE("sequence container, serialization round trip, and guard rails") {
  MomentSpec spec(MomentVariable::DIFF, idx(1), 0);
  MomentSequence seq = build_sequence(spec, 6);
  CHECK(seq.values.size() == 7);
  CHECK(seq.interval_lo == rat(-1, 16));
  CHECK(seq.interval_hi == rat(1, 432));
  MomentSequence back = MomentSequence::from_json(seq.to_json());
  CHECK(back.values == seq.values);
  CHECK(back.spec.k == 0);

  MomentSpec pt(MomentVariable::PT_DET, idx(1), 1);
  CHECK(build_sequence(pt, 2).interval_hi == rat(1, 256));

  CHECK_THROWS_AS(MomentSpec(MomentVariable::DEGENERATE, idx(1), 2), Error);
  CHECK_THROWS_AS(DysonIndex{ParamValue(Rational(0))}, Error);
}

TEST_CASE("induced-measure polynomial shifts kill the subleading coefficient") {
  using E = EnsembleMomentCase;
  for (E c : {E::RR_HS_n1, E::QQ_HS_n1, E::QUAT_HS_n1, E::RR_HS_n2, E::QQ_HS_n2,
              E::RR_HS_n3, E::RB_BURES_n1, E::QB_BURES_n1, E::RB_BURES_n2})
    CHECK(shift_root_check(c, ensemble_reported_shift(c)));
}

TEST_CASE("cross-index fit matches two base cases and fails the third") {
  CHECK(ensemble_cross_alpha_fit(rat(1, 2), 0) ==
        ensemble_moment_eval(EnsembleMomentCase::RR_HS_n1, 0));
  CHECK(ensemble_cross_alpha_fit(Rational(1), 0) ==
        ensemble_moment_eval(EnsembleMomentCase::QQ_HS_n1, 0));
  CHECK(ensemble_cross_alpha_fit(Rational(2), 0) !=
        ensemble_moment_eval(EnsembleMomentCase::QUAT_HS_n1, 0));
  CHECK(ensemble_moment_eval(EnsembleMomentCase::RR_HS_n1, 0) ==
        rat(-7, 1052480));
  CHECK(ensemble_moment_eval(EnsembleMomentCase::QQ_HS_n1, 0) ==
        rat(-11, 1498796));
}
