#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fellb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Global numerical policy. A single rank cutoff keeps subspace dimensions
/// stable across the toolkit; all randomized algorithms take explicit seeds.
namespace tol {
inline constexpr double rank_rel = 1e-10;       // singular values below rank_rel*max count as zero
inline constexpr double gram = 1e-10;           // orthonormality defect of stored bases
inline constexpr double membership = 1e-9;      // fiber membership residual
inline constexpr double axiom = 1e-9;           // bundle axiom residual
inline constexpr double cluster = 1e-7;         // eigenvalue clustering for central projections
inline constexpr double cluster_guard = 10.0;   // clusters closer than guard*cluster are an error
inline constexpr double block_residual = 1e-8;  // block-diagonalization reassembly residual
inline constexpr double unitary = 1e-9;         // unitarity defect of change-of-basis matrices
}  // namespace tol

inline constexpr std::uint64_t kDefaultSeed = 0;

/// Raised when eigenvalue clustering cannot separate spectral blocks at the
/// documented tolerance. Failing loudly beats silently merged blocks.
class degeneracy_error : public std::runtime_error {
 public:
  explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

/// Seeded PRNG wrapper; passed by reference, never global.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  double gauss() { return normal_(engine_); }
  Complex cgauss() { return {normal_(engine_), normal_(engine_)}; }
  double uniform() { return uniform_(engine_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

inline ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cgauss();
  return m;
}

inline ComplexVector random_vector(Rng& rng, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.cgauss();
  return v;
}

inline ComplexVector random_unit_vector(Rng& rng, int dim) {
  ComplexVector v = random_vector(rng, dim);
  double n = v.norm();
  if (n < 1e-300) return ComplexVector::Unit(dim, 0);
  return v / n;
}

inline ComplexMatrix random_hermitian(Rng& rng, int n) {
  ComplexMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint()).eval();
}

/// Hilbert-Schmidt inner product tr(x† y); conjugate-linear in the first slot.
inline Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x.adjoint() * y).trace();
}

inline double hs_norm(const ComplexMatrix& x) { return x.norm(); }

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace fellb
