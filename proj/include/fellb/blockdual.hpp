#pragma once

#include "fellb/subspace.hpp"

#include <vector>

namespace fellb {

/// Exact dual norms over a concrete finite-dimensional C*-algebra. A linear
/// functional tau on the algebra is represented per Wedderburn summand by the
/// matrix F_i with tau(a) = sum_i tr(F_i† a_i), where a_i is the irreducible
/// block of a. The dual of the operator norm is then the sum of the per-block
/// trace norms, attained at the polar unitaries of the F_i.
class BlockDualContext {
 public:
  explicit BlockDualContext(MatrixSubspace algebra, std::uint64_t seed = kDefaultSeed);

  const MatrixSubspace& algebra() const { return algebra_; }
  const BlockDecomposition& decomposition() const { return dec_; }
  int summands() const { return static_cast<int>(dec_.blocks.size()); }

  /// Block components of the functional whose values on algebra.basis() are
  /// given. Linear in those values.
  std::vector<ComplexMatrix> components(const ComplexVector& tau_on_basis) const;

  double dual_norm(const ComplexVector& tau_on_basis) const;
  static double dual_norm_of(const std::vector<ComplexMatrix>& comps);

  /// The algebra element acting as block_i on every copy of summand i.
  ComplexMatrix element_from_blocks(const std::vector<ComplexMatrix>& block_values) const;

  /// Unit-norm algebra element a* with tau(a*) = dual_norm (real, attained).
  ComplexMatrix polar_optimal(const std::vector<ComplexMatrix>& comps) const;

  /// The irreducible block of an algebra element in summand i (first copy).
  ComplexMatrix summand_of(const ComplexMatrix& a, int i) const;

  /// Values on algebra.basis() of the functional with the given components.
  ComplexVector tau_from_components(const std::vector<ComplexMatrix>& comps) const;

 private:
  MatrixSubspace algebra_;
  BlockDecomposition dec_;
  ComplexMatrix comp_map_;  // stacked component entries = comp_map_ * tau_on_basis
  std::vector<int> comp_offsets_;
};

}  // namespace fellb
