#pragma once

#include "fellb/types.hpp"

#include <span>
#include <vector>

namespace fellb {

/// A linear subspace of the matrix algebra M_n, stored as a basis that is
/// orthonormal under the Hilbert-Schmidt inner product tr(x† y). Membership
/// tests are orthogonal projections.
class MatrixSubspace {
 public:
  MatrixSubspace() = default;

  static MatrixSubspace zero(int ambient_dim);
  static MatrixSubspace full(int ambient_dim);
  static MatrixSubspace from_span(int ambient_dim, std::span<const ComplexMatrix> generators);
  static MatrixSubspace from_span(int ambient_dim, const std::vector<ComplexMatrix>& generators);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  ComplexMatrix project(const ComplexMatrix& x) const;
  double membership_residual(const ComplexMatrix& x) const;  // ||x - project(x)||_HS
  bool contains(const ComplexMatrix& x, double tolerance = tol::membership) const;

  /// Coordinates of a member in the stored basis: c_i = <b_i, x>_HS.
  ComplexVector coordinates(const ComplexMatrix& x) const;
  ComplexMatrix from_coordinates(const ComplexVector& c) const;

  bool spans_same(const MatrixSubspace& other, double tolerance = tol::membership) const;
  double gram_residual() const;

  /// Random element with standard complex Gaussian coordinates.
  ComplexMatrix random_element(Rng& rng) const;

 private:
  int ambient_ = 0;
  std::vector<ComplexMatrix> basis_;
};

MatrixSubspace subspace_intersection(const MatrixSubspace& a, const MatrixSubspace& b);
MatrixSubspace subspace_sum(const MatrixSubspace& a, const MatrixSubspace& b);

/// Smallest *-subalgebra of M_n containing the generators (products and
/// adjoints; the identity is not added unless generated).
MatrixSubspace algebra_closure(std::span<const ComplexMatrix> generators);
MatrixSubspace algebra_closure(const std::vector<ComplexMatrix>& generators);

bool is_product_closed(const MatrixSubspace& s, double tolerance = tol::membership);
bool is_adjoint_closed(const MatrixSubspace& s, double tolerance = tol::membership);

/// Basis of {x in M_dim : x op = op x for every op}.
std::vector<ComplexMatrix> matrix_commutant(const std::vector<ComplexMatrix>& ops, int dim);

/// Wedderburn data of a finite-dimensional *-closed matrix algebra:
/// a unitary change of basis under which every algebra element becomes
/// block-diagonal, with each irreducible block of size `size` repeated
/// `multiplicity` times.
struct BlockDecomposition {
  struct Block {
    int multiplicity = 0;
    int size = 0;
  };

  ComplexMatrix unitary;      // n x n; trailing columns span the null space of the action
  std::vector<Block> blocks;  // canonical order: ascending size, then multiplicity
  int action_dim = 0;         // sum of multiplicity*size
  double residual = 0.0;      // worst reassembly defect over the algebra basis

  /// Column isometries onto the j-th copy of summand i, expressed in the
  /// ambient space. copy_isometries[i][j] is n x size_i.
  std::vector<std::vector<ComplexMatrix>> copy_isometries;

  std::vector<int> sizes_with_multiplicity() const;  // sorted multiset of block sizes
  int algebra_dim() const;                           // sum of size^2
};

/// Decomposes a *-closed subalgebra of M_n. The algebra must be closed under
/// products and adjoints; if it does not act unitally on the ambient space,
/// the decomposition is taken on the closure of its range and the orthogonal
/// complement is carried as trailing zero columns.
///
/// Randomized but deterministic for a fixed seed: a random self-adjoint
/// element of the center separates the isotypic summands (eigenvalue
/// clustering at tol::cluster, refusing to guess when clusters nearly
/// collide), a random self-adjoint algebra element identifies the block size
/// and multiplicity inside each summand, and random commutant elements give
/// the unitaries aligning the repeated copies.
BlockDecomposition block_decompose(const MatrixSubspace& algebra, std::uint64_t seed = kDefaultSeed);

}  // namespace fellb
