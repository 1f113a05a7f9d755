#pragma once

#include "fellb/blockdual.hpp"
#include "fellb/group.hpp"

#include <vector>

namespace fellb {

class Coefficient;  // fourier.hpp

/// A complex-valued function on a finite group; the element type of the
/// classical Fourier and Fourier-Stieltjes algebras A(G) = B(G).
struct ClassicalFunction {
  FiniteGroup group;
  std::vector<Complex> values;

  Complex operator()(int s) const { return values.at(s); }
};

ClassicalFunction pointwise_product(const ClassicalFunction& u, const ClassicalFunction& v);
ClassicalFunction delta_function(const FiniteGroup& g, int s);
ClassicalFunction character_function(const FiniteGroup& g, const Character& chi);

/// The coefficient function s -> <lambda_s alpha, beta> = sum_t
/// conj(alpha(s^{-1} t)) beta(t) of the left regular representation.
ClassicalFunction classical_coefficient(const FiniteGroup& g, const std::vector<Complex>& alpha,
                                        const std::vector<Complex>& beta);

/// The group C*-algebra presented through the regular representation of the
/// group algebra, with its Wedderburn data. This is an independent code path
/// from the bundle machinery (permutation matrices straight from the Cayley
/// table), so it can serve as an oracle for trivial-bundle computations.
class GroupCStar {
 public:
  explicit GroupCStar(FiniteGroup g, std::uint64_t seed = kDefaultSeed);

  const FiniteGroup& group() const { return group_; }
  const BlockDualContext& dual() const { return dual_; }
  const BlockDecomposition& blocks() const { return dual_.decomposition(); }

  /// Irreducible dimensions (with repetition per summand), ascending.
  std::vector<int> irreducible_dimensions() const { return dual_.decomposition().sizes_with_multiplicity(); }

  /// Dual norm on C*(G) of the functional f -> sum_s u(s) f(s).
  double bg_norm(const ClassicalFunction& u) const;
  double ag_norm(const ClassicalFunction& u) const { return bg_norm(u); }  // equal for finite G

 private:
  FiniteGroup group_;
  BlockDualContext dual_;
};

double bg_norm(const ClassicalFunction& u, std::uint64_t seed = kDefaultSeed);
double ag_norm(const ClassicalFunction& u, std::uint64_t seed = kDefaultSeed);

/// Strips the scalar part of a trivial-bundle section: theta(xi)(s) = z with
/// xi_s = z lambda_s.
std::vector<Complex> theta_coefficients(const Coefficient& c, bool eta_side);

/// The isometric isomorphism from coefficients over the trivial bundle onto
/// classical coefficient functions: T(lambda_{xi,eta})(s) =
/// <lambda_s theta(xi), theta(eta)>.
ClassicalFunction tb_isomorphism(const Coefficient& c);

}  // namespace fellb
