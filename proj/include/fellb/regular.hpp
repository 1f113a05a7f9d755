#pragma once

#include "fellb/blockdual.hpp"
#include "fellb/section.hpp"

#include <Eigen/QR>

namespace fellb {

/// The regular representation of a Fell bundle, localized to a concrete
/// Hilbert space: l^2(B) ⊗_{B_e} C^n is realized as the direct sum over s of
/// the column spaces B_s·C^n inside C^{n|G|}, with <b⊗v, c⊗w> = v†(b†c)w.
/// The identity representation of B_e on C^n is faithful, so the localized
/// operator norm equals the Hilbert-module operator norm, and left
/// convolution is isometric on fibers by construction.
class RegularRep {
 public:
  explicit RegularRep(BundlePtr bundle);

  const BundlePtr& bundle() const { return bundle_; }
  int dim() const { return dim_; }
  int component_offset(int s) const { return offsets_.at(s); }
  int component_dim(int s) const { return static_cast<int>(isometries_[s].cols()); }
  const ComplexMatrix& component_isometry(int s) const { return isometries_.at(s); }

  /// lambda(f): the block at (st, t) acts as left multiplication by f_s.
  ComplexMatrix matrix(const Section& f) const;
  /// lambda_s(b) = lambda(j_s(b)) without constructing the section.
  ComplexMatrix matrix(int s, const ComplexMatrix& b) const;

  /// The vector of y ⊗ v in the localized space.
  ComplexVector vector(const Section& y, const ComplexVector& v) const;

 private:
  BundlePtr bundle_;
  std::vector<ComplexMatrix> isometries_;  // Q_s: n x k_s, orthonormal columns spanning B_s C^n
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// The enveloping C*-norm. For a finite group the regular representation is
/// faithful on the section algebra and the group is amenable, so the
/// supremum over all representations is attained here; this is checked at
/// presentation time via the fiber-dimension count.
double universal_norm(const RegularRep& rep, const Section& f);

/// A bundle representation materialized as matrices per fiber basis element.
struct BundleRep {
  BundlePtr bundle;
  int dim = 0;
  std::vector<std::vector<ComplexMatrix>> ops;  // ops[s][i] = pi_s(basis_i of B_s)

  ComplexMatrix apply(int s, const ComplexMatrix& b) const;
  /// Worst defect of pi_s(x) pi_t(y) = pi_st(xy) and pi_s(x)† = pi_{s^-1}(x†)
  /// over the fiber bases.
  double representation_residual() const;
};

BundleRep materialize(const RegularRep& rep);

/// The image of the section algebra under the regular representation,
/// closed up into a concrete finite-dimensional C*-algebra with its
/// Wedderburn data and the dual-norm machinery.
class CStarPresentation {
 public:
  CStarPresentation(BundlePtr bundle, std::uint64_t seed = kDefaultSeed);

  const BundlePtr& bundle_ptr() const { return bundle_; }
  const RegularRep& rep() const { return rep_; }
  const BlockDualContext& dual() const { return dual_; }
  const MatrixSubspace& algebra() const { return dual_.algebra(); }
  const BlockDecomposition& blocks() const { return dual_.decomposition(); }

  /// lambda is faithful: the image has one dimension per fiber dimension.
  bool faithful() const { return faithful_; }

  /// The section mapped to the given algebra element by lambda.
  Section section_of(const ComplexMatrix& algebra_element) const;

  /// Sections of the orthonormal algebra basis (for evaluating functionals
  /// on the algebra).
  const std::vector<Section>& basis_sections() const { return basis_sections_; }

 private:
  BundlePtr bundle_;
  RegularRep rep_;
  BlockDualContext dual_;
  bool faithful_ = false;
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> lambda_solver_;
  std::vector<std::pair<int, int>> flat_index_;  // (s, fiber basis index)
  std::vector<Section> basis_sections_;
};

}  // namespace fellb
