#pragma once

#include "fellb/bundle.hpp"

namespace fellb {

/// A finitely supported section of a Fell bundle: one fiber element per group
/// element. Over a finite group the c_c, l^1 and l^2 section spaces coincide
/// as sets, so a single type carries all three norms. Values are projected
/// onto their fibers at construction and rejected if the residual exceeds
/// the membership tolerance.
class Section {
 public:
  Section(BundlePtr bundle, std::vector<ComplexMatrix> values);

  static Section zero(BundlePtr bundle);

  const BundlePtr& bundle() const { return bundle_; }
  const ComplexMatrix& value(int s) const { return values_.at(s); }
  const std::vector<ComplexMatrix>& values() const { return values_; }

  std::vector<int> support(double tolerance = 1e-12) const;

  Section& operator+=(const Section& other);
  Section& operator*=(Complex c);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(const Section& a, const Section& b);
  friend Section operator*(Complex c, Section a) { return a *= c; }

 private:
  BundlePtr bundle_;
  std::vector<ComplexMatrix> values_;
};

/// The section supported at s with value m (m must lie in the fiber B_s).
Section j_embed(BundlePtr bundle, int s, const ComplexMatrix& m);

/// Convolution (y * z)_s = sum_t y_t z_{t^{-1} s}.
Section convolve(const Section& y, const Section& z);

/// Involution y*_s = (y_{s^{-1}})†.
Section involute(const Section& y);

/// sum_s ||y_s|| in the operator norm.
double l1_norm(const Section& y);

/// The B_e-valued inner product <y, z> = sum_s y_s† z_s (conjugate-linear in
/// the first argument).
ComplexMatrix module_inner_product(const Section& y, const Section& z);

/// sqrt(||<y, y>||).
double l2_norm(const Section& y);

Section random_section(BundlePtr bundle, Rng& rng);
/// Random section supported inside the given set.
Section random_section_supported(BundlePtr bundle, const std::vector<int>& support, Rng& rng);

/// The indicator-style section 1_V of a dynamical bundle: value (s, 1) for s
/// in V, zero elsewhere.
Section indicator_section(const DynamicalBundle& db, const std::vector<int>& v);

void require_same_bundle(const Section& a, const Section& b);

}  // namespace fellb
