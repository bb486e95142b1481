#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepprob/moments.hpp"

namespace sepprob {

struct Interval {
  Rational lo, hi;

  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi))
      throw Error(ErrorCode::INVALID_ARGUMENT, "Interval: lo < hi required");
  }
  Rational width() const { return hi - lo; }
};

// Reconstruction precision: nullopt means exact rational arithmetic,
// otherwise MPFR bits.
using ReconPrecision = std::optional<mpfr_prec_t>;

inline constexpr unsigned long kExactDegreeLimit = 400;

// Exact up to degree 400, then BigReal at max(256, 4*degree + 256) bits
// (shifted-Legendre coefficients grow like 4^degree; 2 bits/degree plus
// guard, doubled).
inline ReconPrecision default_reconstruction_precision(unsigned long degree) {
  if (degree <= kExactDegreeLimit) return std::nullopt;
  return std::max<mpfr_prec_t>(256, 4 * (mpfr_prec_t)degree + 256);
}

// Legendre polynomials composed with t -> (2t - lo - hi)/(hi - lo), as exact
// monomial coefficients in t (row j = order j, ascending powers).
std::vector<std::vector<Rational>> shifted_legendre_coefficients(
    unsigned long degree, const Interval& interval);

struct LegendreExpansion {
  Interval interval;
  std::vector<ParamValue> coefficients;  // lambda_0 .. lambda_N
  unsigned long degree = 0;
  ReconPrecision precision;  // nullopt = exact

  // Density value at t (interval.lo <= t <= interval.hi).
  ParamValue evaluate(const ParamValue& t) const;
};

LegendreExpansion fit_density(const MomentSequence& moments, unsigned long degree,
                              ReconPrecision precision);

// Integral of the expansion over [a, b].
ParamValue prob_between(const LegendreExpansion& expansion, const Rational& a,
                        const Rational& b);

struct ReconstructionReport {
  LegendreExpansion expansion;
  ParamValue prob_positive;     // integral over [0, 1/432]
  ParamValue p_alpha;           // summed series value
  ParamValue ratio_to_p_alpha;  // prob_positive / p_alpha
  unsigned long moments_used = 0;
  double runtime_ms = 0.0;

  std::string to_json(const MomentSpec& spec) const;
};

ReconstructionReport separability_ratio(const DysonIndex& alpha,
                                        MomentVariable variable,
                                        unsigned long degree,
                                        ReconPrecision precision);

// mu_n -> gamma/(gamma+n) mu_n  (multiplying the variable by an independent
// Beta(gamma,1) factor preserves the sign distribution).
MomentSequence transform_m(const MomentSequence& moments, const ParamValue& gamma);

// mu_n -> (gamma + delta n)/(gamma + n) mu_n  (delta-weighted mixture of the
// density with its transform_m image).
MomentSequence mixture_transform(const MomentSequence& moments,
                                 const ParamValue& gamma, const ParamValue& delta);

struct EqualProbabilityReport {
  bool moments_equal = false;
  unsigned long checked = 0;
  ParamValue prob_u1, prob_u2;
  ParamValue difference;  // |prob_u1 - prob_u2|
};

// Compares the transformed boundary-moment sequence against the mixture
// transform of the difference moments and the reconstructed positive-mass
// integrals of both.
EqualProbabilityReport equal_probability_check(const DysonIndex& alpha,
                                               unsigned long degree);

// CSV "x,f" sampled at `points` evenly spaced abscissas for plotting.
std::string density_curve_csv(const LegendreExpansion& expansion,
                              unsigned long points);

}  // namespace sepprob
