#pragma once

#include "fellb/classical.hpp"
#include "fellb/regular.hpp"

#include <array>
#include <utility>

namespace fellb {

/// An element of the Fourier-Stieltjes space B(B): one linear functional per
/// fiber, phi_s(b) = tr(F_s† b), with F_s stored as its projection onto B_s
/// so the representation is unique.
class Functional {
 public:
  Functional(BundlePtr bundle, std::vector<ComplexMatrix> components);

  static Functional zero(BundlePtr bundle);

  const BundlePtr& bundle() const { return bundle_; }
  const ComplexMatrix& component(int s) const { return components_.at(s); }
  const std::vector<ComplexMatrix>& components() const { return components_; }

  Complex apply(int s, const ComplexMatrix& b) const { return hs_inner(components_[s], b); }

  std::vector<int> support(double tolerance = 1e-12) const;

  Functional& operator+=(const Functional& other);
  Functional& operator*=(Complex c);
  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(const Functional& a, const Functional& b);
  friend Functional operator*(Complex c, Functional a) { return a *= c; }

 private:
  BundlePtr bundle_;
  std::vector<ComplexMatrix> components_;
};

/// sum_s phi_s(f_s); linear in f, conjugate-linear in the components.
Complex pair(const Functional& phi, const Section& f);

/// The coefficient functional pi_{xi,eta,s}(b) = <pi_s(b) xi, eta> (inner
/// product linear in the first argument), stored through its fiber
/// components.
Functional from_representation(const BundleRep& rep, const ComplexVector& xi,
                               const ComplexVector& eta);

Functional random_functional(BundlePtr bundle, Rng& rng);

/// phi as a linear functional on the presented C*-algebra, evaluated on the
/// orthonormal algebra basis.
ComplexVector functional_on_algebra(const Functional& phi, const CStarPresentation& pres);

/// The functional with the given Wedderburn components, pulled back to fiber
/// components.
Functional functional_from_components(const CStarPresentation& pres,
                                      const std::vector<ComplexMatrix>& comps);

/// The B(B) norm: the dual norm of phi against ||.||_* on the section
/// algebra, computed exactly as the sum of per-summand trace norms.
double bnorm(const Functional& phi, const CStarPresentation& pres);

/// A section with ||f||_* <= 1 attaining pair(phi, f) = bnorm(phi).
Section optimal_pairing_section(const Functional& phi, const CStarPresentation& pres);

enum class Positivity { positive, indeterminate, negative };

/// Fell-Doran positivity: the Gram matrix phi(x† y) over all fiber basis
/// elements must be PSD. Classification refuses to decide when the smallest
/// eigenvalue is negative but within ten times the tolerance band.
Positivity classify_positive_definite(const Functional& phi, double tolerance = tol::membership);
bool is_positive_definite(const Functional& phi, double tolerance = tol::membership);

/// The Gram matrix of the sesquilinear form <f, g> = sum_r phi_r((g* f)_r)
/// on the section algebra, indexed by the flattened fiber bases.
ComplexMatrix gns_gram(const Functional& phi);

struct GnsData {
  BundleRep rep;       // the left-multiplication representation on H_phi
  ComplexVector eta;   // cyclic vector, the class of j_e(1)
  int dim = 0;
  double residual = 0.0;  // worst rep-law and coefficient-recovery defect
};

/// GNS construction for a positive-definite functional: H_phi is the section
/// algebra modulo the null space of the form above; with B_e unital the
/// cyclic vector is the class of j_e(1) (no approximate-identity limit is
/// needed in finite dimensions).
GnsData gns(const Functional& phi);

ComplexMatrix apply_section(const BundleRep& rep, const Section& f);

/// Returns (bnorm(phi), ||eta||^2); the two are equal for positive phi.
std::pair<double, double> check_eta_norm(const Functional& phi, const CStarPresentation& pres);

/// phi = (p1 - p2) + i (p3 - p4) with every part positive definite, by
/// splitting the Wedderburn components into Hermitian and spectral parts.
std::array<Functional, 4> jordan_decompose(const Functional& phi, const CStarPresentation& pres);

struct PolarFactorization {
  GnsData gns;        // GNS of the absolute value |phi|
  ComplexVector xi;   // rho(U) eta for the polar unitary part U
  ComplexVector eta;
  double product = 0.0;  // ||xi|| ||eta||
  double norm = 0.0;     // bnorm(phi)
};

/// phi = pi_{xi,eta} with ||xi|| ||eta|| = bnorm(phi), through the polar
/// decomposition of the Wedderburn components.
PolarFactorization polar_factorization(const Functional& phi, const CStarPresentation& pres);

/// Minimum of ||xi'|| ||eta'|| over sampled alternative factorizations of the
/// same functional (commutant twists and amplifications); never smaller than
/// the polar value beyond numerical slack.
double sampled_factorization_minimum(const PolarFactorization& pf, int samples, std::uint64_t seed);

/// (u phi)_s(b) = u(s) phi_s(b): the left module action of B(G).
Functional bg_module_action(const ClassicalFunction& u, const Functional& phi);

/// A co-associative family of fiber maps Delta_{s,t}: B_st -> B_s ⊗ B_t,
/// inducing products on B(B) and A(B). Two instances ship: the unital
/// dynamical family Delta(st, a) = (s,1) ⊗ (t,a) with distinguished elements
/// (s,1), and the Hopf family induced by a comultiplication on the fiber
/// algebra, Delta(st, a) = sum (s, a_k) ⊗ (t, a'_k).
class Comultiplication {
 public:
  enum class Kind { dynamical, hopf };

  static Comultiplication dynamical(DynamicalBundle db);
  /// delta_coeffs[k](l,m) are the tensor coefficients of Delta(a_k) in the
  /// fiber-algebra basis; the action must commute with Delta.
  static Comultiplication hopf(DynamicalBundle db, std::vector<ComplexMatrix> delta_coeffs);

  Kind kind() const { return kind_; }
  const DynamicalBundle& carrier() const { return db_; }
  const std::vector<ComplexMatrix>& hopf_delta() const { return delta_; }
  double coassociativity_residual() const;

 private:
  Comultiplication(Kind k, DynamicalBundle db, std::vector<ComplexMatrix> delta);
  Kind kind_;
  DynamicalBundle db_;
  std::vector<ComplexMatrix> delta_;
};

/// The standard comultiplication on C*(H) for the shipped Hopf carrier:
/// every group unitary maps to its own double.
Comultiplication hopf_c2_comultiplication();

/// The induced product on B(B): for the dynamical family
/// (phi psi)_s(b) = phi_s((s,1)) psi_s(b); for the Hopf family
/// (phi psi)_s = (phi_s ⊗ psi_s) ∘ Delta.
Functional multiply(const Functional& phi, const Functional& psi, const Comultiplication& delta);

/// phi_s((s,1)) = 1 for every s; the unit for the dynamical product.
Functional unit_like_functional(const DynamicalBundle& db);

/// On the trivial bundle, the functional pairing delta_s to chi(s).
Functional trivial_character_functional(const BundlePtr& trivial, const Character& chi);

struct DualIsoReport {
  int trials = 0;
  bool saturated = false;
  double worst_gap = 0.0;        // bnorm minus the best sampled pairing
  double worst_overshoot = 0.0;  // any sampled pairing exceeding bnorm

  bool pass(double tolerance = 1e-4) const {
    return worst_gap <= tolerance && worst_overshoot <= tolerance;
  }
};

/// Dual-isometry verification: for random functionals, the block-formula
/// norm dominates every sampled |pair(phi, f)| with ||f||_* <= 1 and is
/// attained by the polar-optimal section, whose norm is computed through the
/// representation (independently of the block data).
DualIsoReport dual_iso_check(const CStarPresentation& pres, int trials, std::uint64_t seed);

}  // namespace fellb
