#include "sepprob/random_states.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace sepprob {

const char* field_kind_name(FieldKind f) {
  switch (f) {
    case FieldKind::REAL: return "real";
    case FieldKind::COMPLEX: return "complex";
    case FieldKind::QUATERNION: return "quaternion";
  }
  return "?";
}

FieldKind field_kind_from_name(const std::string& name) {
  if (name == "real") return FieldKind::REAL;
  if (name == "complex") return FieldKind::COMPLEX;
  if (name == "quaternion") return FieldKind::QUATERNION;
  throw Error(ErrorCode::INVALID_ARGUMENT, "unknown field: " + name);
}

DysonIndex field_alpha(FieldKind f) {
  switch (f) {
    case FieldKind::REAL: return DysonIndex{ParamValue(Rational(1, 2))};
    case FieldKind::COMPLEX: return DysonIndex{ParamValue(Rational(1))};
    case FieldKind::QUATERNION: return DysonIndex{ParamValue(Rational(2))};
  }
  throw Error(ErrorCode::INVALID_ARGUMENT, "bad field");
}

// ---- Philox4x32-10 ----

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : counter_{0, 0, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)},
      key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)} {}

void RngStream::refill() {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  std::array<std::uint32_t, 4> c = counter_;
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kW0;
    k1 += kW1;
  }
  buf_ = c;
  buf_pos_ = 0;
  if (++counter_[0] == 0) ++counter_[1];
}

std::uint32_t RngStream::next_u32() {
  if (buf_pos_ >= 4) refill();
  return buf_[buf_pos_++];
}

double RngStream::next_double() {
  std::uint64_t hi = next_u32(), lo = next_u32();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1p-53;
}

double RngStream::next_open() {
  double u;
  do {
    u = next_double();
  } while (u <= 0.0);
  return u;
}

double RngStream::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_open(), u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double RngStream::next_gamma(double shape) {
  if (!(shape > 0))
    throw Error(ErrorCode::INVALID_ARGUMENT, "next_gamma: shape > 0 required");
  if (shape < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}
    double u = next_open();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_normal();
    double t = 1.0 + c * x;
    if (t <= 0) continue;
    double v = t * t * t;
    double u = next_open();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> dirichlet(RngStream& rng, const std::vector<double>& shapes) {
  std::vector<double> y(shapes.size());
  double total = 0;
  for (size_t i = 0; i < shapes.size(); ++i) {
    y[i] = rng.next_gamma(shapes[i]);
    total += y[i];
  }
  for (double& v : y) v /= total;
  return y;
}

// ---- Quaternion matrices ----

Eigen::MatrixXcd QuatMatrix::complex_adjoint() const {
  using C = std::complex<double>;
  Eigen::MatrixXcd m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Quat& q = at(i, j);
      m(2 * i, 2 * j) = C(q.w, q.x);
      m(2 * i, 2 * j + 1) = C(q.y, q.z);
      m(2 * i + 1, 2 * j) = C(-q.y, q.z);
      m(2 * i + 1, 2 * j + 1) = C(q.w, -q.x);
    }
  return m;
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int block) {
  long n = m.rows();
  if (m.cols() != n || block < 1 || block >= n || n % block != 0)
    throw Error(ErrorCode::BAD_BIPARTITION,
                "partial_transpose: dimension not divisible into blocks");
  Eigen::MatrixXcd out(n, n);
  for (long br = 0; br < n; br += block)
    for (long bc = 0; bc < n; bc += block)
      for (int i = 0; i < block; ++i)
        for (int j = 0; j < block; ++j)
          out(br + i, bc + j) = m(br + j, bc + i);
  return out;
}

QuatMatrix partial_transpose(const QuatMatrix& m, int block,
                             bool conjugate_entries) {
  int n = m.n;
  if (block < 1 || block >= n || n % block != 0)
    throw Error(ErrorCode::BAD_BIPARTITION,
                "partial_transpose: dimension not divisible into blocks");
  QuatMatrix out(n);
  for (int br = 0; br < n; br += block)
    for (int bc = 0; bc < n; bc += block)
      for (int i = 0; i < block; ++i)
        for (int j = 0; j < block; ++j) {
          Quat q = m.at(br + j, bc + i);
          out.at(br + i, bc + j) = conjugate_entries ? q.conj() : q;
        }
  return out;
}

double det_self_adjoint(const Eigen::MatrixXcd& m) {
  return m.determinant().real();
}

double det_self_adjoint(const QuatMatrix& m) {
  // The doubled representation has each eigenvalue twice; the determinant
  // is the product over distinct pairs.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.complex_adjoint(),
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double det = 1;
  for (long i = 0; i < ev.size(); i += 2) det *= 0.5 * (ev[i] + ev[i + 1]);
  return det;
}

// ---- Samplers ----

namespace {

using C = std::complex<double>;

std::vector<double> cholesky_shapes(double a, int dim, bool degenerate) {
  std::vector<double> s;
  for (int i = dim - 1; i >= 0; --i) s.push_back(1.0 + i * a);
  int off = dim * (dim - 1) / 2;
  for (int i = 0; i < off; ++i) s.push_back(a);
  if (degenerate) s.erase(s.begin() + (dim - 1));
  return s;
}

void check_diff_range(double diff) {
  if (diff < -1.0 / 16 - 1e-12 || diff > 1.0 / 432 + 1e-12)
    throw std::logic_error("sampled |rho^PT|-|rho| outside [-1/16, 1/432]");
}

DensityMatrixSample finish_complex_sample(FieldKind field, int dim,
                                          const Eigen::MatrixXcd& chol,
                                          double det_rho, bool degenerate,
                                          int pt_block) {
  DensityMatrixSample s;
  s.field = field;
  s.dim = dim;
  s.rho = chol.adjoint() * chol;
  s.det_rho = det_rho;
  s.det_pt = det_self_adjoint(partial_transpose(s.rho, pt_block));
  s.is_degenerate = degenerate;
  if (dim == 4) check_diff_range(s.det_pt - s.det_rho);
  return s;
}

// Fills the strict upper triangle magnitudes with phased entries and the
// diagonal with sqrt(y); y is ordered diagonal-first, then row-major.
DensityMatrixSample cholesky_sample(FieldKind field, int dim, RngStream& rng,
                                    bool degenerate) {
  double a = field_alpha(field).rational().get_d();
  auto y = dirichlet(rng, cholesky_shapes(a, dim, degenerate));
  std::vector<double> diag(dim);
  size_t pos = 0;
  for (int i = 0; i < dim; ++i) {
    if (degenerate && i == dim - 1)
      diag[i] = 0;
    else
      diag[i] = std::sqrt(y[pos++]);
  }
  int pt_block = dim == 4 ? 2 : 3;

  if (field == FieldKind::QUATERNION) {
    QuatMatrix cm(dim);
    for (int i = 0; i < dim; ++i) cm.at(i, i) = Quat{diag[i], 0, 0, 0};
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        double r = std::sqrt(y[pos++]);
        Quat u;
        double norm;
        do {
          u = Quat{rng.next_normal(), rng.next_normal(), rng.next_normal(),
                   rng.next_normal()};
          norm = std::sqrt(u.w * u.w + u.x * u.x + u.y * u.y + u.z * u.z);
        } while (norm < 1e-12);
        cm.at(i, j) = Quat{r * u.w / norm, r * u.x / norm, r * u.y / norm,
                           r * u.z / norm};
      }
    DensityMatrixSample s;
    s.field = field;
    s.dim = dim;
    s.qrho = QuatMatrix(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Quat acc;
        for (int k = 0; k <= std::min(i, j); ++k)
          acc = acc + cm.at(k, i).conj() * cm.at(k, j);
        s.qrho.at(i, j) = acc;
      }
    s.det_rho = 1;
    for (int i = 0; i < dim; ++i) s.det_rho *= diag[i] * diag[i];
    s.det_pt = det_self_adjoint(
        partial_transpose(s.qrho, pt_block, kQuaternionPtConjugates));
    s.is_degenerate = degenerate;
    if (dim == 4) check_diff_range(s.det_pt - s.det_rho);
    return s;
  }

  Eigen::MatrixXcd cm = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) cm(i, i) = diag[i];
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      double r = std::sqrt(y[pos++]);
      if (field == FieldKind::REAL) {
        cm(i, j) = rng.next_u32() & 1u ? r : -r;
      } else {
        double th = 2.0 * M_PI * rng.next_double();
        cm(i, j) = C(r * std::cos(th), r * std::sin(th));
      }
    }
  double det_rho = 1;
  for (int i = 0; i < dim; ++i) det_rho *= diag[i] * diag[i];
  return finish_complex_sample(field, dim, cm, det_rho, degenerate, pt_block);
}

}  // namespace

DensityMatrixSample sample_cholesky_hs(FieldKind field, RngStream& rng) {
  return cholesky_sample(field, 4, rng, false);
}

DensityMatrixSample sample_ginibre_hs(FieldKind field, RngStream& rng) {
  if (field == FieldKind::QUATERNION)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "sample_ginibre_hs: no rectangular Gaussian factor yields the "
                "flat measure over quaternionic states");
  int dim = 4;
  // Flat (unit-weight) eigenvalue density needs K = N complex columns but
  // K = N + 1 real ones.
  int cols = field == FieldKind::REAL ? dim + 1 : dim;
  Eigen::MatrixXcd g(cols, dim);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = field == FieldKind::REAL
                    ? C(rng.next_normal(), 0.0)
                    : C(rng.next_normal(), rng.next_normal());
  Eigen::MatrixXcd rho = g.adjoint() * g;
  rho /= rho.trace().real();
  DensityMatrixSample s;
  s.field = field;
  s.dim = dim;
  s.rho = rho;
  s.det_rho = det_self_adjoint(rho);
  s.det_pt = det_self_adjoint(partial_transpose(rho, 2));
  return s;
}

DensityMatrixSample sample_degenerate(FieldKind field, RngStream& rng) {
  if (field == FieldKind::QUATERNION)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "sample_degenerate: real and complex fields only");
  DensityMatrixSample s = cholesky_sample(field, 4, rng, true);
  s.det_rho = 0;
  return s;
}

DensityMatrixSample sample_qubit_qutrit(FieldKind field, RngStream& rng) {
  if (field == FieldKind::QUATERNION)
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "sample_qubit_qutrit: real and complex fields only");
  return cholesky_sample(field, 6, rng, false);
}

// ---- Estimators ----

namespace {

struct Tally {
  unsigned long n = 0, sep = 0, ppt_greater = 0, ties = 0;
  double diff1 = 0, diff2 = 0, diff4 = 0;
  double det1 = 0, det2 = 0, det4 = 0;

  void add(double det_rho, double det_pt) {
    ++n;
    double diff = det_pt - det_rho;
    if (det_pt > 0) {
      ++sep;
      if (det_pt > det_rho) ++ppt_greater;
      if (det_pt == det_rho) ++ties;
    }
    diff1 += diff;
    diff2 += diff * diff;
    diff4 += diff * diff * diff * diff;
    det1 += det_rho;
    det2 += det_rho * det_rho;
    det4 += det_rho * det_rho * det_rho * det_rho;
  }
  void merge(const Tally& o) {
    n += o.n;
    sep += o.sep;
    ppt_greater += o.ppt_greater;
    ties += o.ties;
    diff1 += o.diff1;
    diff2 += o.diff2;
    diff4 += o.diff4;
    det1 += o.det1;
    det2 += o.det2;
    det4 += o.det4;
  }
};

Estimate binomial_estimate(unsigned long hits, unsigned long n) {
  if (n == 0) return {};
  double p = double(hits) / double(n);
  return {p, std::sqrt(p * (1 - p) / double(n))};
}

Estimate mean_estimate(double s1, double s2, unsigned long n) {
  if (n == 0) return {};
  double mean = s1 / double(n);
  double var = s2 / double(n) - mean * mean;
  return {mean, std::sqrt(std::max(var, 0.0) / double(n))};
}

template <class SampleFn>
Tally run_streams(unsigned long n_samples, std::uint64_t seed, unsigned streams,
                  SampleFn&& fn) {
  if (streams < 1 || n_samples < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "need n_samples, streams >= 1");
  Tally total;
  unsigned long base = n_samples / streams, rem = n_samples % streams;
  for (unsigned s = 0; s < streams; ++s) {
    RngStream rng(seed, s);
    Tally t;
    unsigned long count = base + (s < rem ? 1 : 0);
    for (unsigned long i = 0; i < count; ++i) {
      auto smp = fn(rng);
      t.add(smp.det_rho, smp.det_pt);
    }
    total.merge(t);
  }
  return total;
}

}  // namespace

SampleStats estimate_probabilities(FieldKind field, unsigned long n_samples,
                                   std::uint64_t seed, unsigned streams,
                                   bool degenerate) {
  auto t0 = std::chrono::steady_clock::now();
  Tally t = run_streams(n_samples, seed, streams, [&](RngStream& rng) {
    return degenerate ? sample_degenerate(field, rng)
                      : sample_cholesky_hs(field, rng);
  });
  SampleStats st;
  st.field = field;
  st.n_samples = n_samples;
  st.seed = seed;
  st.rng_stream_count = streams;
  st.p_separable = binomial_estimate(t.sep, t.n);
  st.n_ppt = t.sep;
  st.ties = t.ties;
  st.p_pt_greater = binomial_estimate(t.ppt_greater, t.sep);
  st.moment_estimates["diff_1"] = mean_estimate(t.diff1, t.diff2, t.n);
  st.moment_estimates["diff_2"] = mean_estimate(t.diff2, t.diff4, t.n);
  st.moment_estimates["det_1"] = mean_estimate(t.det1, t.det2, t.n);
  st.moment_estimates["det_2"] = mean_estimate(t.det2, t.det4, t.n);
  st.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                     .count();
  return st;
}

std::string SampleStats::to_json() const {
  nlohmann::json j;
  j["schema"] = "sepprob/mc/1";
  j["field"] = field_kind_name(field);
  j["n_samples"] = n_samples;
  j["seed"] = seed;
  j["streams"] = rng_stream_count;
  j["p_separable"] = p_separable.mean;
  j["p_separable_stderr"] = p_separable.se;
  j["n_ppt"] = n_ppt;
  j["p_pt_greater"] = p_pt_greater.mean;
  j["p_pt_greater_stderr"] = p_pt_greater.se;
  j["ties"] = ties;
  nlohmann::json m;
  for (const auto& [k, e] : moment_estimates)
    m[k] = {{"mean", e.mean}, {"stderr", e.se}};
  j["moments"] = m;
  j["elapsed_s"] = elapsed_s;
  return j.dump();
}

SymmetryReport symmetry_check(FieldKind field, unsigned long n_samples,
                              std::uint64_t seed, unsigned streams) {
  Tally t = run_streams(n_samples, seed, streams, [&](RngStream& rng) {
    return sample_cholesky_hs(field, rng);
  });
  SymmetryReport r;
  r.n_samples = n_samples;
  r.n_ppt = t.sep;
  r.n_greater = t.ppt_greater;
  r.ties = t.ties;
  r.fraction = t.sep ? double(t.ppt_greater) / double(t.sep) : 0.0;
  r.four_sigma = t.sep ? 4.0 * std::sqrt(0.25 / double(t.sep)) : 0.0;
  r.within_four_sigma = std::fabs(r.fraction - 0.5) <= r.four_sigma;
  return r;
}

QubitQutritStats estimate_qubit_qutrit(FieldKind field, unsigned long n_samples,
                                       std::uint64_t seed, unsigned streams) {
  if (streams < 1 || n_samples < 1)
    throw Error(ErrorCode::INVALID_ARGUMENT, "need n_samples, streams >= 1");
  QubitQutritStats st;
  st.field = field;
  st.n_samples = n_samples;
  st.seed = seed;
  double s1 = 0, s2 = 0;
  unsigned long det_bad = 0, pt_bad = 0;
  unsigned long base = n_samples / streams, rem = n_samples % streams;
  const double det_hi = 1.0 / 46656, pt_lim = 1.0 / 2916, tol = 1e-12;
  for (unsigned s = 0; s < streams; ++s) {
    RngStream rng(seed, s);
    unsigned long count = base + (s < rem ? 1 : 0);
    for (unsigned long i = 0; i < count; ++i) {
      auto smp = sample_qubit_qutrit(field, rng);
      double diff = smp.det_pt - smp.det_rho;
      s1 += diff;
      s2 += diff * diff;
      if (smp.det_rho < -tol || smp.det_rho > det_hi + tol) ++det_bad;
      if (smp.det_pt < -pt_lim - tol || smp.det_pt > pt_lim + tol) ++pt_bad;
    }
  }
  st.diff_mean = mean_estimate(s1, s2, n_samples);
  st.det_range_violations = det_bad;
  st.pt_range_violations = pt_bad;
  return st;
}

DensityMatrixSample example_family(const Rational& u, const Rational& v) {
  Rational av = v < 0 ? Rational(-v) : v;
  if (u < 0 || u > Rational(1, 2) || av > u)
    throw Error(ErrorCode::NOT_PSD,
                "example_family: need 0 <= u <= 1/2 and |v| <= u");
  double ud = u.get_d(), vd = v.get_d();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = ud;
  rho(0, 3) = rho(3, 0) = vd;
  rho(1, 1) = rho(2, 2) = 0.5 - ud;
  DensityMatrixSample s;
  s.field = FieldKind::REAL;
  s.dim = 4;
  s.rho = rho;
  s.det_rho = Rational((u * u - v * v) * (Rational(1, 2) - u) *
                       (Rational(1, 2) - u))
                  .get_d();
  s.det_pt = det_self_adjoint(partial_transpose(rho, 2));
  s.is_degenerate = (u == av) || u == Rational(1, 2);
  return s;
}

}  // namespace sepprob
