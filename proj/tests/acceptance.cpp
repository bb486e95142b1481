// Acceptance harness: exercises every module end to end and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sepprob/legendre.hpp"
#include "sepprob/moments.hpp"
#include "sepprob/random_states.hpp"
#include "sepprob/sympoly.hpp"

using namespace sepprob;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

DysonIndex idx(const Rational& a) { return DysonIndex{ParamValue(a)}; }

// 1. Series summation reproduces the five known closed probabilities.
void criterion1() {
  struct Known { Rational alpha, p; } cases[] = {
      {rat(1, 2), rat(29, 64)},        {Rational(1), rat(8, 33)},
      {rat(3, 2), rat(36061, 262144)}, {Rational(2), rat(26, 323)},
      {Rational(4), rat(44482, 4091349)},
  };
  bool ok = true;
  double worst = 0, slowest = 0;
  for (const auto& c : cases) {
    double t0 = now_s();
    auto res = p_concise(idx(c.alpha), Rational(1, 10000000000000L));
    double dt = now_s() - t0;
    double err = std::fabs(res.value.to_double() - c.p.get_d());
    worst = std::max(worst, err);
    slowest = std::max(slowest, dt);
    ok = ok && err < 1e-12 && dt < 5.0;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "series matches all five closed values (max err %.2e, slowest "
                "%.2f s)", worst, slowest);
  report(1, ok, buf);
}

// 2. Hypergeometric identity battery, exact, under one minute.
void criterion2() {
  double t0 = now_s();
  bool ok = true;
  const Rational alphas[] = {rat(1, 2), Rational(1), rat(3, 2), Rational(2),
                             rat(5, 2)};
  for (const Rational& a : alphas)
    for (unsigned long n = 0; n <= 8; ++n)
      for (unsigned long k = 0; k <= 4; ++k)
        ok = ok && f2_via_binomial(n, k, idx(a)).rational() ==
                       f2_closed(n, k, idx(a)).rational();
  RngStream rng(20260826, 17);
  for (unsigned long n = 0; n <= 12 && ok; ++n)
    for (unsigned long m = 0; m <= 14; ++m)
      for (int t = 0; t < 20; ++t) {
        Rational x = rat((long)(rng.next_u32() % 60) + 1,
                         (long)(rng.next_u32() % 7) + 1);
        ok = ok && lemma_sum(n, m, x) == lemma_closed(n, m, x);
      }
  for (const Rational& a : alphas)
    for (unsigned long n = 0; n <= 8 && ok; ++n)
      ok = ok && moment_ptdet_direct(n, idx(a)) ==
                     moment_ptdet(n, 0, idx(a)).rational();
  double dt = now_s() - t0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "binomial route, convolution identity, and two-term "
                "evaluation all exact (%.1f s)", dt);
  report(2, ok && dt < 60.0, buf);
}

// 3. Brute-force symbolic expectations match the closed forms.
void criterion3() {
  bool ok = true;
  for (unsigned long n = 0; n <= 3; ++n)
    for (unsigned long k = 0; k <= 2; ++k)
      ok = ok && verify_f2(n, k, rat(1, 2)).match;
  for (unsigned long n = 0; n <= 2; ++n)
    for (unsigned long k = 0; k <= 2; ++k)
      ok = ok && verify_f2(n, k, Rational(1)).match;
  for (const Rational& a : {rat(1, 2), Rational(1)})
    for (unsigned long n = 1; n <= 2; ++n) {
      for (unsigned long k = 1; k <= 2; ++k)
        ok = ok && verify_degenerate_conjecture(n, k, a).match;
      ok = ok && verify_degenerate_corollary(n, a).match;
    }
  report(3, ok, "symbolic brute-force expectations equal every closed form");
}

// 4. Boundary-to-bulk moment ratio identity.
void criterion4() {
  bool ok = true;
  for (unsigned long n = 1; n <= 10; ++n) {
    Rational lhs = degenerate_moment(n, idx(rat(1, 2))).rational() /
                   f2_closed(n, 0, idx(rat(1, 2))).rational();
    Rational rhs = rat((long)(3 * n + 7) * (long)(4 * n + 9),
                       9 * (long)(4 * n + 7));
    ok = ok && lhs == rhs;
  }
  report(4, ok, "boundary/bulk moment ratio equals (3n+7)(4n+9)/(9(4n+7))");
}

// 5. The two moment transforms agree term by term.
void criterion5() {
  double t0 = now_s();
  bool ok = true;
  for (const Rational& a : {rat(1, 2), Rational(1), Rational(2), rat(7, 3)}) {
    auto rep = equal_probability_check(idx(a), 50);
    ok = ok && rep.moments_equal && rep.checked >= 50;
  }
  double dt = now_s() - t0;
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "both transform routes give identical moments to n = 50 "
                "(%.1f s)", dt);
  report(5, ok && dt < 60.0, buf);
}

// 6. Density reconstruction converges to ratio 1/2.
void criterion6() {
  bool ok = true;
  double prev = 1e9, final_err = 1;
  for (unsigned long degree : {101ul, 201ul, 401ul, 801ul}) {
    auto rep = separability_ratio(idx(Rational(1)), MomentVariable::DIFF,
                                  degree, default_reconstruction_precision(degree));
    double err = std::fabs(rep.ratio_to_p_alpha.to_double() - 0.5);
    ok = ok && err <= prev;
    prev = err;
    final_err = err;
  }
  ok = ok && final_err < 5e-3;
  auto deg = separability_ratio(idx(Rational(1)), MomentVariable::DEGENERATE,
                                201, std::nullopt);
  auto dif = separability_ratio(idx(Rational(1)), MomentVariable::DIFF, 201,
                                std::nullopt);
  bool faster = std::fabs(deg.ratio_to_p_alpha.to_double() - 0.5) <
                std::fabs(dif.ratio_to_p_alpha.to_double() - 0.5);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "ratio error nonincreasing to %.1e at degree 801; boundary "
                "variable converges faster at matched degree", final_err);
  report(6, ok && faster, buf);
}

// 7. Monte Carlo at 1e7 matches the closed forms within 4 standard errors.
void criterion7() {
  const unsigned long N = 10000000;
  struct Target { FieldKind field; Rational p; } targets[] = {
      {FieldKind::COMPLEX, rat(8, 33)},
      {FieldKind::REAL, rat(29, 64)},
      {FieldKind::QUATERNION, rat(26, 323)},
  };
  bool ok = true;
  for (const auto& t : targets) {
    double t0 = now_s();
    auto st = estimate_probabilities(t.field, N, 20260826, 4);
    DysonIndex a = field_alpha(t.field);
    double zp = std::fabs(st.p_separable.mean - t.p.get_d()) /
                st.p_separable.se;
    bool field_ok = zp < 4.0;
    for (unsigned long k = 1; k <= 2; ++k) {
      auto est = st.moment_estimates.at("det_" + std::to_string(k));
      double target = g_factor(0, k, a).to_double();
      field_ok = field_ok && std::fabs(est.mean - target) / est.se < 4.0;
    }
    for (unsigned long n = 1; n <= 2; ++n) {
      auto est = st.moment_estimates.at("diff_" + std::to_string(n));
      double target = f2_closed(n, 0, a).to_double();
      field_ok = field_ok && std::fabs(est.mean - target) / est.se < 4.0;
    }
    std::printf("  [mc %s] p_sep %.6f (target %.6f, %.1f sigma), %.0f s\n",
                field_kind_name(t.field), st.p_separable.mean, t.p.get_d(), zp,
                now_s() - t0);
    std::fflush(stdout);
    ok = ok && field_ok;
  }
  report(7, ok, "1e7-sample estimates within 4 stderr of every closed form");
}

// 8. Sign symmetry of the determinant comparison among PPT states.
void criterion8() {
  bool ok = true;
  for (auto f : {FieldKind::REAL, FieldKind::COMPLEX}) {
    auto r = symmetry_check(f, 1000000, 20260826);
    ok = ok && r.within_four_sigma;
    std::printf("  [symmetry %s] fraction %.5f (4-sigma band %.5f)\n",
                field_kind_name(f), r.fraction, r.four_sigma);
  }
  report(8, ok, "PPT determinant comparison is 1/2 within 4 sigma, both fields");
}

// 9. Qubit-qutrit mean determinant difference matches the closed values.
void criterion9() {
  const unsigned long N = 10000000;
  bool ok = true;
  struct Target { FieldKind field; Rational mean; } targets[] = {
      {FieldKind::COMPLEX, rat(-11, 1498796)},
      {FieldKind::REAL, rat(-7, 1052480)},
  };
  for (const auto& t : targets) {
    auto st = estimate_qubit_qutrit(t.field, N, 20260826, 4);
    double z = std::fabs(st.diff_mean.mean - t.mean.get_d()) / st.diff_mean.se;
    ok = ok && z < 4.0;
    std::printf("  [6x6 %s] mean %.3e (target %.3e, %.1f sigma), range "
                "violations det=%lu pt=%lu\n",
                field_kind_name(t.field), st.diff_mean.mean, t.mean.get_d(), z,
                st.det_range_violations, st.pt_range_violations);
    std::fflush(stdout);
  }
  report(9, ok, "qubit-qutrit mean differences within 4 stderr of closed values");
}

// 10. Recentering-shift structure of the induced-measure polynomials.
void criterion10() {
  using E = EnsembleMomentCase;
  bool ok = true;
  for (E c : {E::RR_HS_n1, E::QQ_HS_n1, E::QUAT_HS_n1, E::RR_HS_n2,
              E::QQ_HS_n2, E::RR_HS_n3, E::RB_BURES_n1, E::QB_BURES_n1,
              E::RB_BURES_n2})
    ok = ok && shift_root_check(c, ensemble_reported_shift(c));
  ok = ok && ensemble_cross_alpha_fit(rat(1, 2), 0) ==
                 ensemble_moment_eval(E::RR_HS_n1, 0);
  ok = ok && ensemble_cross_alpha_fit(Rational(1), 0) ==
                 ensemble_moment_eval(E::QQ_HS_n1, 0);
  ok = ok && ensemble_cross_alpha_fit(Rational(2), 0) !=
                 ensemble_moment_eval(E::QUAT_HS_n1, 0);
  report(10, ok,
         "all nine shift checks pass; cross-index fit provably misses the "
         "quaternionic case");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0) {
    std::printf("ALL ACCEPTANCE CRITERIA PASS\n");
    return 0;
  }
  std::printf("%d criterion(s) FAILED\n", g_failures);
  return 1;
}
