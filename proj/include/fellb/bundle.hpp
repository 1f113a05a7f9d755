#pragma once

#include "fellb/group.hpp"
#include "fellb/subspace.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fellb {

/// A Fell bundle over a finite group, realized concretely: the fiber over s
/// is a subspace B_s of a fixed matrix algebra M_n with B_s B_t inside B_st
/// and B_s† = B_{s^{-1}}. Working inside a concrete M_n keeps every norm
/// computable.
class FellBundle {
 public:
  FellBundle(FiniteGroup group, int ambient_dim, std::vector<MatrixSubspace> fibers);

  const FiniteGroup& group() const { return group_; }
  int ambient_dim() const { return ambient_; }
  const MatrixSubspace& fiber(int s) const { return fibers_.at(s); }
  int total_fiber_dim() const;

  /// The unit of the fiber algebra B_e (the ambient identity for every
  /// shipped constructor). Throws if B_e has no unit.
  const ComplexMatrix& unit() const { return unit_; }

 private:
  FiniteGroup group_;
  int ambient_ = 0;
  std::vector<MatrixSubspace> fibers_;
  ComplexMatrix unit_;
};

using BundlePtr = std::shared_ptr<const FellBundle>;

struct AxiomCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_pass() const;
  double worst_residual() const;
};

/// Checks the grading inclusion, the involution symmetry and that the unit
/// fiber is a *-subalgebra. Failures are reported, not thrown.
AxiomReport verify_bundle_axioms(const FellBundle& b);

/// True iff span(B_s B_t) = B_st for all s,t; in finite dimensions density
/// is equality, so this is an exact dimension comparison.
bool is_saturated(const FellBundle& b);

/// Fibers C·lambda_s inside M_|G| via the left-regular permutation matrices.
BundlePtr trivial_bundle(const FiniteGroup& g);

ComplexMatrix left_regular_matrix(const FiniteGroup& g, int s);

/// A finite-dimensional C*-dynamical system: a unital *-subalgebra A of M_m
/// (with unit the ambient identity) and an action of G on A by
/// *-automorphisms, stored as matrices on the coordinates of A.
struct DynamicalSystem {
  MatrixSubspace algebra;
  FiniteGroup group;
  std::vector<ComplexMatrix> action;  // action[s] on algebra coordinates

  ComplexMatrix apply(int s, const ComplexMatrix& a) const;
  /// Worst automorphism-law defect (identity, composition, products,
  /// adjoints, unit) over the algebra basis.
  double validate() const;
};

DynamicalSystem trivial_system(MatrixSubspace algebra, FiniteGroup g);

/// gamma_s = Ad(U_s) for a projective homomorphism s -> U_s into the
/// unitaries normalizing the algebra.
DynamicalSystem conjugation_system(MatrixSubspace algebra, FiniteGroup g,
                                   std::vector<ComplexMatrix> unitaries);

/// The Fell bundle of a dynamical system, realized in M_{m|G|} through the
/// regular covariant pair pi(a)(xi ⊗ delta_t) = gamma_{t^{-1}}(a) xi ⊗
/// delta_t, u_s = 1 ⊗ (left translation); the fiber over s is pi(A) u_s and
/// the product matches (s,a)(t,b) = (st, a gamma_s(b)).
class DynamicalBundle {
 public:
  DynamicalBundle(BundlePtr bundle, DynamicalSystem sys);

  const BundlePtr& bundle() const { return bundle_; }
  const DynamicalSystem& system() const { return sys_; }
  int algebra_dim() const { return sys_.algebra.dim(); }

  /// The matrix of the bundle element (s, a).
  ComplexMatrix insert(int s, const ComplexMatrix& a) const;
  /// Recovers a from the matrix of (s, a).
  ComplexMatrix algebra_part(int s, const ComplexMatrix& m) const;
  /// The matrix of (s, 1).
  ComplexMatrix unit_element(int s) const;

 private:
  BundlePtr bundle_;
  DynamicalSystem sys_;
};

DynamicalBundle dynamical_bundle(const DynamicalSystem& sys);

/// trivial_bundle(g) re-expressed as the dynamical bundle of (C, g, id);
/// both realizations have identical fibers.
DynamicalBundle trivial_dynamical_bundle(const FiniteGroup& g);

/// Fibers A_s = span{matrix units with grade s} ∩ algebra, for a
/// multiplicative grading grade[i][j] with grade[i][i] = e. The graded parts
/// must exhaust the algebra.
BundlePtr graded_bundle(const MatrixSubspace& algebra, const FiniteGroup& g,
                        const std::vector<std::vector<int>>& grade);

/// The spectral bundle of an abelian system over the dual group: the fiber
/// over a character chi is the chi-eigenspace of the action.
struct SpectralBundle {
  BundlePtr bundle;       // over the dual group
  FiniteGroup dual;       // character group with pointwise multiplication
  std::vector<Character> characters;
};

SpectralBundle spectral_bundle(const DynamicalSystem& sys, std::uint64_t seed = kDefaultSeed);

/// Builds the double crossed product through the dual action
/// (gamma-hat_chi f)(s) = chi(s) f(s) and compares the multiset of
/// irreducible block sizes against that of A ⊗ M_|G|, each computed
/// independently.
bool takai_check(const DynamicalSystem& sys, std::uint64_t seed = kDefaultSeed);

/// The crossed product algebra (the span of all bundle fibers) of a
/// dynamical bundle, as a subspace of its ambient matrix algebra.
MatrixSubspace crossed_product_algebra(const DynamicalBundle& db);

}  // namespace fellb
