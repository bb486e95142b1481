#include "sepprob/sympoly.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"

namespace sepprob {

MultivariatePolynomial MultivariatePolynomial::constant(const Rational& c,
                                                        FieldKind mode) {
  MultivariatePolynomial p(mode);
  p.add_term(Mono{}, c);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(int slot,
                                                        FieldKind mode) {
  MultivariatePolynomial p(mode);
  Mono m{};
  m[slot] = 1;
  p.add_term(m, Rational(1));
  return p;
}

unsigned MultivariatePolynomial::total_degree() const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (auto e : m) d += e;
    best = std::max(best, d);
  }
  return best;
}

void MultivariatePolynomial::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultivariatePolynomial MultivariatePolynomial::operator+(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultivariatePolynomial MultivariatePolynomial::operator-(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, Rational(-c));
  return r;
}

MultivariatePolynomial MultivariatePolynomial::operator*(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial r(mode_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m;
      for (int i = 0; i < 16; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, Rational(ca * cb));
    }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::operator*(const Rational& c) const {
  MultivariatePolynomial r(mode_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

MultivariatePolynomial MultivariatePolynomial::operator-() const {
  return *this * Rational(-1);
}

bool MultivariatePolynomial::operator==(const MultivariatePolynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (const auto& [m, c] : terms_) {
    auto it = o.terms_.find(m);
    if (it == o.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

MultivariatePolynomial MultivariatePolynomial::conj() const {
  if (mode_ == FieldKind::REAL) return *this;
  MultivariatePolynomial r(mode_);
  for (const auto& [m, c] : terms_) {
    Mono s = m;
    for (int j = 4; j < 10; ++j) std::swap(s[j], s[j + 6]);
    r.add_term(s, c);
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::substitute_zero(int slot) const {
  MultivariatePolynomial r(mode_);
  for (const auto& [m, c] : terms_)
    if (m[slot] == 0) r.add_term(m, c);
  return r;
}

MultivariatePolynomial MultivariatePolynomial::pow(unsigned n) const {
  MultivariatePolynomial r = constant(Rational(1), mode_);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

namespace {

bool parity_zero(const Mono& m, FieldKind mode) {
  for (int i = 0; i < 4; ++i)
    if (m[i] % 2) return true;
  if (mode == FieldKind::REAL) {
    for (int j = 4; j < 16; ++j)
      if (m[j] % 2) return true;
  } else {
    for (int j = 4; j < 10; ++j)
      if (m[j] != m[j + 6]) return true;
  }
  return false;
}

}  // namespace

MultivariatePolynomial MultivariatePolynomial::prune_odd() const {
  MultivariatePolynomial r(mode_);
  for (const auto& [m, c] : terms_)
    if (!parity_zero(m, mode_)) r.add_term(m, c);
  return r;
}

Rational MultivariatePolynomial::evaluate(
    const std::vector<Rational>& point) const {
  if (point.size() != 16)
    throw Error(ErrorCode::INVALID_ARGUMENT, "evaluate: 16 coordinates expected");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < 16; ++i)
      if (m[i]) t *= pow_int(point[i], m[i]);
    sum += t;
  }
  return sum;
}

// ---- Expectation rules ----

namespace {

Rational expectation_counted(const MultivariatePolynomial& p,
                             ExpectationRule rule, const Rational& alpha,
                             unsigned long k, size_t* nonzero, size_t* pruned) {
  if (!(alpha == Rational(1, 2) || alpha == Rational(1)))
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "expectation: monomial rules known for alpha = 1/2, 1 only");
  if (rule == ExpectationRule::WEIGHTED_K && k < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "expectation: WEIGHTED_K needs k >= 1");
  FieldKind mode = p.mode();
  Rational kk((long)k);
  Rational total = 0;
  size_t kept = 0, dropped = 0;
  for (const auto& [m, c] : p.terms()) {
    if (parity_zero(m, mode)) {
      ++dropped;
      continue;
    }
    unsigned long n1 = m[0] / 2, n2 = m[1] / 2, n3 = m[2] / 2, n4 = m[3] / 2;
    std::array<unsigned long, 6> nj{};
    for (int j = 0; j < 6; ++j)
      nj[j] = mode == FieldKind::REAL ? m[4 + j] / 2 : m[4 + j];
    if (rule == ExpectationRule::CONDITIONAL_X4 && n4 > 0) {
      ++dropped;
      continue;
    }
    unsigned long n = n1 + n2 + n3 + n4;
    for (auto v : nj) n += v;
    Rational num, den;
    switch (rule) {
      case ExpectationRule::FULL:
        num = pochhammer(1 + 3 * alpha, n1) * pochhammer(1 + 2 * alpha, n2) *
              pochhammer(1 + alpha, n3) * pochhammer(Rational(1), n4);
        den = pochhammer(4 + 12 * alpha, n);
        break;
      case ExpectationRule::CONDITIONAL_X4:
        num = pochhammer(1 + 3 * alpha, n1) * pochhammer(1 + 2 * alpha, n2) *
              pochhammer(1 + alpha, n3);
        den = pochhammer(3 + 12 * alpha, n);
        break;
      case ExpectationRule::WEIGHTED_K:
        num = pochhammer(kk + 1 + 3 * alpha, n1) *
              pochhammer(kk + 1 + 2 * alpha, n2) *
              pochhammer(kk + 1 + alpha, n3) * pochhammer(kk, n4);
        den = pochhammer(3 + 4 * kk + 12 * alpha, n);
        break;
    }
    for (auto v : nj) num *= pochhammer(alpha, v);
    total += c * num / den;
    ++kept;
  }
  if (nonzero) *nonzero = kept;
  if (pruned) *pruned = dropped;
  return total;
}

}  // namespace

Rational expectation(const MultivariatePolynomial& p, ExpectationRule rule,
                     const Rational& alpha, unsigned long k) {
  return expectation_counted(p, rule, alpha, k, nullptr, nullptr);
}

// ---- Symbolic rho ----

std::vector<std::vector<MultivariatePolynomial>> build_rho_symbolic(
    FieldKind field) {
  if (field == FieldKind::QUATERNION)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "build_rho_symbolic: real and complex modes only");
  using P = MultivariatePolynomial;
  P zero(field);
  std::vector<std::vector<P>> c(4, std::vector<P>(4, zero));
  // Diagonal x1..x4; strict upper triangle x5..x10 row-major.
  int off = 4;
  for (int i = 0; i < 4; ++i) {
    c[i][i] = P::variable(i, field);
    for (int j = i + 1; j < 4; ++j) c[i][j] = P::variable(off++, field);
  }
  std::vector<std::vector<P>> rho(4, std::vector<P>(4, zero));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      P acc(field);
      for (int k = 0; k <= std::min(i, j); ++k)
        acc = acc + c[k][i].conj() * c[k][j];
      rho[i][j] = acc;
    }
  return rho;
}

MultivariatePolynomial det_poly(
    const std::vector<std::vector<MultivariatePolynomial>>& m) {
  size_t n = m.size();
  if (n == 0 || n > 4)
    throw Error(ErrorCode::INVALID_ARGUMENT, "det_poly: size 1..4 expected");
  for (const auto& row : m)
    if (row.size() != n)
      throw Error(ErrorCode::INVALID_ARGUMENT, "det_poly: not square");
  FieldKind mode = m[0][0].mode();
  std::vector<int> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = (int)i;
  MultivariatePolynomial det(mode);
  do {
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    MultivariatePolynomial prod =
        MultivariatePolynomial::constant(Rational(sign), mode);
    bool zero = false;
    for (size_t i = 0; i < n && !zero; ++i) {
      if (m[i][perm[i]].is_zero()) zero = true;
      else prod = prod * m[i][perm[i]];
    }
    if (!zero) det = det + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (mode == FieldKind::COMPLEX && !(det == det.conj()))
    throw Error(ErrorCode::NOT_REAL,
                "det_poly: imaginary part failed to cancel");
  return det;
}

std::vector<std::vector<MultivariatePolynomial>> partial_transpose_symbolic(
    const std::vector<std::vector<MultivariatePolynomial>>& m) {
  size_t n = m.size();
  if (n != 4)
    throw Error(ErrorCode::BAD_BIPARTITION, "partial_transpose_symbolic: 4x4 only");
  auto out = m;
  for (size_t br = 0; br < n; br += 2)
    for (size_t bc = 0; bc < n; bc += 2)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[br + i][bc + j] = m[br + j][bc + i];
  return out;
}

PtDiffDecomposition decompose_pt_diff(FieldKind field) {
  auto rho = build_rho_symbolic(field);
  MultivariatePolynomial det_rho = det_poly(rho);
  MultivariatePolynomial det_pt = det_poly(partial_transpose_symbolic(rho));
  MultivariatePolynomial diff = det_pt - det_rho;
  PtDiffDecomposition d{MultivariatePolynomial(field),
                        MultivariatePolynomial(field), diff};
  for (const auto& [m, c] : diff.terms()) {
    if (m[3] == 0) {
      d.f1.add_term(m, c);
    } else if (m[3] == 2) {
      Mono s = m;
      s[3] = 0;
      d.f2.add_term(s, c);
    } else {
      throw Error(ErrorCode::DECOMPOSITION_FAILED,
                  "decompose_pt_diff: term with x4-degree " +
                      std::to_string(m[3]));
    }
  }
  return d;
}

// ---- Verifications ----

namespace {

FieldKind field_for(const Rational& alpha) {
  if (alpha == Rational(1, 2)) return FieldKind::REAL;
  if (alpha == Rational(1)) return FieldKind::COMPLEX;
  throw Error(ErrorCode::INVALID_ARGUMENT,
              "symbolic verification: alpha must be 1/2 or 1");
}

VerificationReport make_report(std::string check, unsigned long n,
                               unsigned long k, const Rational& alpha,
                               Rational lhs, Rational rhs, size_t nonzero,
                               size_t pruned,
                               std::chrono::steady_clock::time_point t0) {
  VerificationReport r;
  r.check = std::move(check);
  r.n = n;
  r.k = k;
  r.alpha = alpha;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.match = r.lhs == r.rhs;
  r.monomials_nonzero = nonzero;
  r.monomials_pruned = pruned;
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  return r;
}

}  // namespace

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "sepprob/verify/1";
  j["check"] = check;
  j["n"] = n;
  j["k"] = k;
  j["alpha"] = to_string(alpha);
  j["lhs"] = to_string(lhs);
  j["rhs"] = to_string(rhs);
  j["match"] = match;
  j["monomials_nonzero"] = monomials_nonzero;
  j["monomials_pruned"] = monomials_pruned;
  j["elapsed_s"] = elapsed_s;
  return j.dump();
}

VerificationReport verify_f2(unsigned long n, unsigned long k,
                             const Rational& alpha) {
  auto t0 = std::chrono::steady_clock::now();
  FieldKind field = field_for(alpha);
  auto d = decompose_pt_diff(field);
  auto rho = build_rho_symbolic(field);
  MultivariatePolynomial det_rho = det_poly(rho);
  MultivariatePolynomial p = d.diff.pow(n) * det_rho.pow(k);
  size_t nonzero = 0, pruned = 0;
  Rational num =
      expectation_counted(p, ExpectationRule::FULL, alpha, 0, &nonzero, &pruned);
  Rational den = expectation(det_rho.pow(k), ExpectationRule::FULL, alpha);
  DysonIndex a{ParamValue(alpha)};
  return make_report("f2", n, k, alpha, num / den,
                     f2_closed(n, k, a).rational(), nonzero, pruned, t0);
}

VerificationReport verify_degenerate_conjecture(unsigned long n, unsigned long k,
                                                const Rational& alpha) {
  auto t0 = std::chrono::steady_clock::now();
  FieldKind field = field_for(alpha);
  auto d = decompose_pt_diff(field);
  size_t nonzero = 0, pruned = 0;
  Rational lhs = expectation_counted(d.diff.pow(n), ExpectationRule::WEIGHTED_K,
                                     alpha, k, &nonzero, &pruned);
  Rational kk((long)k), nn((long)n);
  Rational ratio = (2 + 4 * kk + 10 * alpha + 3 * nn) *
                   (3 + 4 * kk + 12 * alpha + 4 * nn) /
                   ((2 + 4 * kk + 10 * alpha + 4 * nn) *
                    (3 + 4 * kk + 12 * alpha));
  DysonIndex a{ParamValue(alpha)};
  Rational rhs = ratio * f2_closed(n, k, a).rational();
  return make_report("degenerate_conjecture", n, k, alpha, lhs, rhs, nonzero,
                     pruned, t0);
}

VerificationReport verify_degenerate_corollary(unsigned long n,
                                               const Rational& alpha) {
  auto t0 = std::chrono::steady_clock::now();
  FieldKind field = field_for(alpha);
  auto d = decompose_pt_diff(field);
  size_t nonzero = 0, pruned = 0;
  Rational lhs = expectation_counted(d.f1.pow(n), ExpectationRule::CONDITIONAL_X4,
                                     alpha, 0, &nonzero, &pruned);
  DysonIndex a{ParamValue(alpha)};
  return make_report("degenerate_corollary", n, 0, alpha, lhs,
                     degenerate_moment(n, a).rational(), nonzero, pruned, t0);
}

}  // namespace sepprob
