#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sepprob/moments.hpp"

namespace sepprob {

enum class FieldKind { REAL, COMPLEX, QUATERNION };

const char* field_kind_name(FieldKind f);
FieldKind field_kind_from_name(const std::string& name);
DysonIndex field_alpha(FieldKind f);  // 1/2, 1, 2

// Counter-based splittable RNG (Philox4x32-10): streams are independent and
// reproducible for any partitioning of the work.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  double next_double();  // [0, 1)
  double next_open();    // (0, 1)
  double next_normal();
  double next_gamma(double shape);  // shape > 0, unit scale

 private:
  void refill();
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> buf_;
  int buf_pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Normalized independent Gamma draws.
std::vector<double> dirichlet(RngStream& rng, const std::vector<double>& shapes);

struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  Quat conj() const { return {w, -x, -y, -z}; }
  friend Quat operator+(const Quat& a, const Quat& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
};

struct QuatMatrix {
  int n = 0;
  std::vector<Quat> a;  // row-major

  QuatMatrix() = default;
  explicit QuatMatrix(int dim) : n(dim), a(dim * dim) {}
  Quat& at(int i, int j) { return a[i * n + j]; }
  const Quat& at(int i, int j) const { return a[i * n + j]; }

  // q = w + xi + yj + zk -> [[w+xi, y+zi], [-y+zi, w-xi]] per entry.
  Eigen::MatrixXcd complex_adjoint() const;
};

struct DensityMatrixSample {
  FieldKind field = FieldKind::COMPLEX;
  int dim = 4;
  Eigen::MatrixXcd rho;   // REAL/COMPLEX fields
  QuatMatrix qrho;        // QUATERNION field
  double det_rho = 0, det_pt = 0;
  bool is_degenerate = false;
};

// Transposes each block x block sub-block of m in place (the partial
// transpose of the second tensor factor).
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int block);
QuatMatrix partial_transpose(const QuatMatrix& m, int block,
                             bool conjugate_entries);

// Determinant of a self-adjoint matrix, as a real number. Quaternionic
// matrices go through the doubled complex representation: eigenvalues come
// in degenerate pairs and the determinant is the product over pairs.
double det_self_adjoint(const Eigen::MatrixXcd& m);
double det_self_adjoint(const QuatMatrix& m);

// Quaternionic partial-transpose convention, fixed by calibrating sampled
// (|rho^PT| - |rho|) moments against the alpha = 2 closed form: the entries
// of the transposed blocks are NOT conjugated.
inline constexpr bool kQuaternionPtConjugates = false;

// One Hilbert-Schmidt-measure sample via the Cholesky/Dirichlet construction.
DensityMatrixSample sample_cholesky_hs(FieldKind field, RngStream& rng);

// Same measure via a normalized Gaussian (Ginibre) product; cross-check only.
DensityMatrixSample sample_ginibre_hs(FieldKind field, RngStream& rng);

// The x4 = 0 boundary law (REAL/COMPLEX only): |rho| = 0 exactly.
DensityMatrixSample sample_degenerate(FieldKind field, RngStream& rng);

// 6x6 qubit-qutrit sample (REAL/COMPLEX); PT acts on 3x3 blocks.
DensityMatrixSample sample_qubit_qutrit(FieldKind field, RngStream& rng);

struct Estimate {
  double mean = 0, se = 0;
};

struct SampleStats {
  FieldKind field = FieldKind::COMPLEX;
  unsigned long n_samples = 0;
  std::uint64_t seed = 0;
  unsigned rng_stream_count = 1;
  Estimate p_separable;   // fraction with |rho^PT| > 0
  Estimate p_pt_greater;  // among those, fraction with |rho^PT| > |rho|
  unsigned long n_ppt = 0;
  unsigned long ties = 0;
  std::map<std::string, Estimate> moment_estimates;
  double elapsed_s = 0;

  std::string to_json() const;
};

SampleStats estimate_probabilities(FieldKind field, unsigned long n_samples,
                                   std::uint64_t seed, unsigned streams = 4,
                                   bool degenerate = false);

struct SymmetryReport {
  unsigned long n_samples = 0, n_ppt = 0, n_greater = 0, ties = 0;
  double fraction = 0, four_sigma = 0;
  bool within_four_sigma = false;
};

// Among PPT samples, |rho^PT| > |rho| should happen with probability 1/2.
SymmetryReport symmetry_check(FieldKind field, unsigned long n_samples,
                              std::uint64_t seed, unsigned streams = 4);

struct QubitQutritStats {
  FieldKind field = FieldKind::REAL;
  unsigned long n_samples = 0;
  std::uint64_t seed = 0;
  Estimate diff_mean;  // mean of |rho^PT| - |rho|
  unsigned long det_range_violations = 0;  // |rho| outside [0, 1/46656]
  unsigned long pt_range_violations = 0;   // |rho^PT| outside +-1/2916
};

QubitQutritStats estimate_qubit_qutrit(FieldKind field, unsigned long n_samples,
                                       std::uint64_t seed, unsigned streams = 4);

// rho = [[u,0,0,v],[0,1/2-u,0,0],[0,0,1/2-u,0],[v,0,0,u]].
DensityMatrixSample example_family(const Rational& u, const Rational& v);

}  // namespace sepprob
