#pragma once

#include "fellb/types.hpp"

#include <string>
#include <vector>

namespace fellb {

/// A finite group given by its Cayley table. Elements are dense indices
/// 0..order-1 with the identity at index 0. Construction checks the full
/// group axioms exhaustively (Latin square, associativity, identity,
/// inverses), which is cheap at desk scale.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> cayley,
                                std::vector<std::string> labels = {});

  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int s, int t) const { return cayley_[s][t]; }
  int inv(int s) const { return inverse_[s]; }
  const std::vector<std::vector<int>>& cayley() const { return cayley_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_abelian() const;
  std::vector<int> center() const;
  int element_order(int s) const;
  bool same_table(const FiniteGroup& other) const { return cayley_ == other.cayley_; }

 private:
  FiniteGroup() = default;
  int order_ = 0;
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

FiniteGroup cyclic(int n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup dihedral(int n);   // order 2n, n >= 2
FiniteGroup symmetric(int n);  // order n!, 1 <= n <= 5
FiniteGroup klein_four();

/// A character of an abelian group: a multiplicative map into the unit circle.
struct Character {
  std::vector<Complex> values;

  Complex operator()(int s) const { return values[s]; }
};

/// All |G| characters of an abelian group, trivial character first, in a
/// deterministic order. Computed by simultaneously diagonalizing the regular
/// representation and snapping the eigenvalues to exact roots of unity, so
/// orthogonality holds to ~1e-15.
std::vector<Character> dual_group(const FiniteGroup& g, std::uint64_t seed = kDefaultSeed);

/// The dual group realized as a FiniteGroup under pointwise multiplication
/// of the characters returned by dual_group (same indexing).
FiniteGroup dual_group_as_group(const FiniteGroup& g, const std::vector<Character>& chars);

double character_orthogonality_defect(const FiniteGroup& g, const std::vector<Character>& chars);

/// A finite set C with |KC| < (1+eps)|C|. For a finite group C = G always
/// works and makes the approximate-identity identity exact, so that is what
/// is returned.
std::vector<int> folner_certificate(const FiniteGroup& g, const std::vector<int>& k, double eps);

}  // namespace fellb
