#pragma once

#include <string>
#include <vector>

#include "sepprob/hyper.hpp"

namespace sepprob {

// Random-matrix Dyson-like index; 1/2 real, 1 complex, 2 quaternionic.
struct DysonIndex {
  ParamValue alpha;

  explicit DysonIndex(ParamValue a) : alpha(std::move(a)) {
    if (alpha.sign() <= 0)
      throw Error(ErrorCode::INVALID_ARGUMENT, "DysonIndex: alpha must be > 0");
  }
  bool is_rational() const { return alpha.is_rational(); }
  const Rational& rational() const { return alpha.rational(); }
};

enum class MomentVariable {
  PT_DET,      // |rho^PT|
  DIFF,        // |rho^PT| - |rho|
  DEGENERATE,  // |rho_0^PT| on the |rho| = 0 boundary
};

const char* moment_variable_name(MomentVariable v);
MomentVariable moment_variable_from_name(const std::string& name);

struct MomentSpec {
  MomentVariable variable;
  DysonIndex alpha;
  unsigned long k = 0;

  MomentSpec(MomentVariable v, DysonIndex a, unsigned long kk = 0)
      : variable(v), alpha(std::move(a)), k(kk) {
    if (variable == MomentVariable::DEGENERATE && k != 0)
      throw Error(ErrorCode::INVALID_ARGUMENT, "DEGENERATE moments require k = 0");
  }
};

struct MomentSequence {
  MomentSpec spec;
  std::vector<ParamValue> values;  // index n = 0..N, values[0] = 1
  Rational interval_lo, interval_hi;

  std::string to_json() const;
  std::string to_csv() const;
  static MomentSequence from_json(const std::string& text);
};

// ---- Partial-transpose moment building blocks ----

// g(k,n) = (k+1)_n (k+1+a)_n (k+1+2a)_n / (2^{6n} (k+3a+3/2)_n (2k+6a+5/2)_{2n})
ParamValue g_factor(unsigned long k, unsigned long n, const DysonIndex& alpha);

// The terminating 5F4 h(k,n), evaluated as the generic-k limit (upper -k and
// half-index lower parameters produce joint removable zeros at integer k).
ParamValue h_factor(unsigned long k, unsigned long n, const DysonIndex& alpha);

// <|rho^PT|^n |rho|^k> / <|rho|^k> = g(k,n) h(k,n)
ParamValue moment_ptdet(unsigned long n, unsigned long k, const DysonIndex& alpha);

// Independent two-term 5F4 evaluation of <|rho^PT|^n>, k = 0 only.
ParamValue moment_ptdet_direct(unsigned long n, const DysonIndex& alpha);

// F2(n,k) = <|rho|^k (|rho^PT|-|rho|)^n> / <|rho|^k>, closed 4F3 form.
ParamValue f2_closed(unsigned long n, unsigned long k, const DysonIndex& alpha);

// Same via the binomial sum g(k,n) sum_j C(n,j)(-1)^{n-j} h(k+n-j, j).
ParamValue f2_via_binomial(unsigned long n, unsigned long k, const DysonIndex& alpha);

// (10a+3n+2)(12a+4n+3) / ((12a+3)(10a+4n+2))
ParamValue degenerate_ratio(unsigned long n, const DysonIndex& alpha);

// <|rho_0^PT|^n> closed form (minimally degenerate boundary).
ParamValue degenerate_moment(unsigned long n, const DysonIndex& alpha);

// ---- Concise separability probability P(alpha) ----

struct PConciseResult {
  ParamValue value;
  unsigned long terms_used = 0;
  double tail_bound = 0.0;   // heuristic geometric bound on the truncation error
  double tail_ratio = 0.0;   // observed limiting term ratio (about 27/64)
};

// Single series term f(alpha) = P(alpha) - P(alpha+1).
ParamValue p_concise_term(const DysonIndex& alpha, mpfr_prec_t prec = kDefaultPrecision);

// P(alpha) = sum_i f(alpha+i), truncated when the geometric tail bound
// drops below epsilon.
PConciseResult p_concise(const DysonIndex& alpha, const Rational& epsilon,
                         mpfr_prec_t prec = kDefaultPrecision);

// ---- Closed-form induced-measure moments for other ensembles ----

enum class EnsembleMomentCase {
  RR_HS_n1,    // rebit-retrit, Hilbert-Schmidt, n=1
  QQ_HS_n1,    // qubit-qutrit, HS, n=1
  QUAT_HS_n1,  // quaterbit-quatertrit, HS, n=1
  RR_HS_n2,
  QQ_HS_n2,
  RR_HS_n3,
  RB_BURES_n1,  // two-rebit, Bures, n=1
  QB_BURES_n1,  // two-qubit, Bures, n=1
  RB_BURES_n2,
};

const char* ensemble_moment_case_name(EnsembleMomentCase c);

Rational ensemble_moment_eval(EnsembleMomentCase c, unsigned long k);

// The single cross-alpha formula that fits the n=1 rebit-retrit and
// qubit-qutrit cases (and provably fails at alpha=2).
Rational ensemble_cross_alpha_fit(const Rational& alpha, unsigned long k);

// True iff the second-highest numerator coefficient vanishes under the
// recentering shift by r.
bool shift_root_check(EnsembleMomentCase c, const Rational& r);

// Reported recentering shift for each case.
Rational ensemble_reported_shift(EnsembleMomentCase c);

// ---- Batch building ----

MomentSequence build_sequence(const MomentSpec& spec, unsigned long n_max);

}  // namespace sepprob
