#pragma once

#include "fellb/functional.hpp"

#include <limits>

namespace fellb {

/// An element of the Fourier space A(B): the coefficient lambda_{xi,eta} of
/// the regular representation, with B_e-valued evaluations
/// lambda_{xi,eta,s}(b) = <lambda_s(b) xi, eta> = sum_t (b xi_{s^{-1}t})† eta_t.
class Coefficient {
 public:
  Coefficient(Section xi, Section eta);

  const BundlePtr& bundle() const { return xi_.bundle(); }
  const Section& xi() const { return xi_; }
  const Section& eta() const { return eta_; }

 private:
  Section xi_;
  Section eta_;
};

/// sum_t (b xi_{s^{-1}t})† eta_t; requires b in B_s. The result lies in B_e.
ComplexMatrix evaluate(const Coefficient& c, int s, const ComplexMatrix& b);

/// A general element of A(B), stored through its values on the fiber bases.
/// Products, multiplier actions and the span-of-positive-definite maps land
/// here. The tag records whether evaluation is conjugate-linear in the fiber
/// argument (as for coefficients) or linear (as for images of functionals).
class FourierElement {
 public:
  enum class ArgLinearity { conjugate_linear, linear };

  FourierElement(BundlePtr bundle, ArgLinearity lin,
                 std::vector<std::vector<ComplexMatrix>> basis_values,
                 double upper = std::numeric_limits<double>::infinity());

  static FourierElement of(const Coefficient& c);

  const BundlePtr& bundle() const { return bundle_; }
  ArgLinearity linearity() const { return lin_; }
  const ComplexMatrix& basis_value(int s, int i) const { return values_.at(s).at(i); }
  ComplexMatrix value(int s, const ComplexMatrix& b) const;
  double upper_bound() const { return upper_; }

  FourierElement& operator*=(Complex c);
  friend FourierElement operator-(const FourierElement& a, const FourierElement& b);

 private:
  BundlePtr bundle_;
  ArgLinearity lin_;
  std::vector<std::vector<ComplexMatrix>> values_;
  double upper_;
};

struct NormInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified interval for the A(B) norm. The upper bound ||xi||_2 ||eta||_2
/// is always valid; the lower bound is a multi-start alternating ascent
/// where, for fixed unit vectors (u, v), the scalarized functional
/// f -> u† <lambda(f) xi, eta> v is maximized exactly over the ||.||_*-unit
/// ball by the block dual norm, and (u, v) are then realigned with the top
/// singular pair of the attained value. On the trivial bundle the interval
/// collapses to the classical norm.
NormInterval anorm_bounds(const FourierElement& w, const CStarPresentation& pres, int budget,
                          std::uint64_t seed);
NormInterval anorm_bounds(const Coefficient& c, const CStarPresentation& pres, int budget,
                          std::uint64_t seed);

struct VanishingReport {
  std::vector<double> map_norms;      // sampled norm of evaluate(s, .) per element
  std::vector<int> support;           // elements where the map is nonzero
  std::vector<int> predicted_support; // supp(eta) supp(xi)^{-1}
  bool support_contained = true;
};

/// Finite-group degeneration of the c_0 property: every evaluation map is
/// bounded (norms reported per element) and the support is contained in
/// supp(eta) supp(xi)^{-1}.
VanishingReport vanishing_check(const Coefficient& c, int samples = 16,
                                std::uint64_t seed = kDefaultSeed);

/// Eymard element for a subset K of a unital dynamical bundle: the
/// coefficient lambda_{1_{K^{-1}}, 1_{e}} evaluating to (e, a†) for s in K
/// and to zero outside K, exactly.
Coefficient eymard_element(const DynamicalBundle& db, const std::vector<int>& k);

/// The Folner approximate-identity element u_{K,eps} =
/// lambda_{1_C, 1_{KC}} / ((1+eps)|C|) with C a Folner certificate for
/// (K, eps); its norm upper bound is sqrt(|KC|)/((1+eps) sqrt(|C|)) <= 1.
Coefficient folner_approx_identity(const DynamicalBundle& db, const std::vector<int>& k,
                                   double eps);

/// The induced product on A(B) through the comultiplication family.
FourierElement multiply(const Coefficient& u, const Coefficient& v, const Comultiplication& delta);

/// ||uv - v|| / ||v|| with both norms computed in the same (lower-bound)
/// mode; for the Folner element this equals eps/(1+eps) for every v
/// supported in K.
double approx_identity_defect(const Coefficient& u, const Coefficient& v,
                              const std::vector<int>& k, const Comultiplication& delta,
                              const CStarPresentation& pres, int budget, std::uint64_t seed);

/// The multiplier action of B(B) on A(B):
/// (phi · c)_s(b) = phi_s((s,1)) <lambda_s(b) xi, eta>.
FourierElement multiplier_action(const Functional& phi, const Coefficient& c,
                                 const Comultiplication& delta, const CStarPresentation& pres);

/// The involution of A(B): star(lambda_{xi,eta}) = lambda_{eta,xi}, so that
/// evaluate(star(c), s, b) = evaluate(c, s^{-1}, b†)† for every fiber element.
Coefficient star(const Coefficient& c);

/// Two-sided A(G)-module action: values multiply pointwise by u.
FourierElement ag_module_action(const ClassicalFunction& u, const Coefficient& c);

/// A state on the unit fiber, psi(x) = tr(density† x) with psi(1) = 1.
struct UnitFiberState {
  BundlePtr bundle;
  ComplexMatrix density;

  Complex apply(const ComplexMatrix& x) const { return hs_inner(density, x); }
};

UnitFiberState normalized_trace_state(const DynamicalBundle& db);

/// T(phi) = u_phi · phi: maps a finitely supported positive-definite
/// functional into A(B) through the Eymard element of its support; the image
/// evaluates to (e,1) phi_s(b) on the support.
FourierElement t_forward(const Functional& phi, const DynamicalBundle& db);

/// T_psi: A(B) -> span of positive-definite functionals, composing the
/// (adjoint of the) evaluation with a state on B_e. Inverts t_forward.
Functional t_psi(const FourierElement& w, const UnitFiberState& psi);

}  // namespace fellb
