#include "fellb/classical.hpp"

#include "fellb/bundle.hpp"
#include "fellb/fourier.hpp"
#include "fellb/matrix.hpp"

#include <stdexcept>

namespace fellb {

ClassicalFunction pointwise_product(const ClassicalFunction& u, const ClassicalFunction& v) {
  if (!u.group.same_table(v.group)) throw std::invalid_argument("pointwise_product: group mismatch");
  ClassicalFunction out{u.group, u.values};
  for (std::size_t s = 0; s < out.values.size(); ++s) out.values[s] *= v.values[s];
  return out;
}

ClassicalFunction delta_function(const FiniteGroup& g, int s) {
  ClassicalFunction out{g, std::vector<Complex>(g.order(), 0.0)};
  out.values.at(s) = 1.0;
  return out;
}

ClassicalFunction character_function(const FiniteGroup& g, const Character& chi) {
  return ClassicalFunction{g, chi.values};
}

ClassicalFunction classical_coefficient(const FiniteGroup& g, const std::vector<Complex>& alpha,
                                        const std::vector<Complex>& beta) {
  ClassicalFunction out{g, std::vector<Complex>(g.order(), 0.0)};
  for (int s = 0; s < g.order(); ++s) {
    Complex acc = 0.0;
    for (int t = 0; t < g.order(); ++t)
      acc += std::conj(alpha[g.mul(g.inv(s), t)]) * beta[t];
    out.values[s] = acc;
  }
  return out;
}

namespace {

MatrixSubspace group_algebra_span(const FiniteGroup& g) {
  std::vector<ComplexMatrix> gens;
  gens.reserve(g.order());
  for (int s = 0; s < g.order(); ++s) gens.push_back(left_regular_matrix(g, s));
  return MatrixSubspace::from_span(g.order(), gens);
}

}  // namespace

GroupCStar::GroupCStar(FiniteGroup g, std::uint64_t seed)
    : group_(std::move(g)), dual_(group_algebra_span(group_), seed) {}

double GroupCStar::bg_norm(const ClassicalFunction& u) const {
  if (!u.group.same_table(group_)) throw std::invalid_argument("bg_norm: group mismatch");
  const auto& alg = dual_.algebra();
  const int order = group_.order();
  // tau(a) = sum_s u(s) c_s(a) with a = sum_s c_s lambda_s; the lambda_s have
  // Hilbert-Schmidt norm sqrt(|G|), so c_s(a) = tr(lambda_s† a)/|G|.
  ComplexVector tau(alg.dim());
  for (int k = 0; k < alg.dim(); ++k) {
    Complex acc = 0.0;
    for (int s = 0; s < order; ++s)
      acc += u.values[s] * hs_inner(left_regular_matrix(group_, s), alg.basis()[k]) /
             static_cast<double>(order);
    tau(k) = acc;
  }
  return dual_.dual_norm(tau);
}

double bg_norm(const ClassicalFunction& u, std::uint64_t seed) {
  return GroupCStar(u.group, seed).bg_norm(u);
}

double ag_norm(const ClassicalFunction& u, std::uint64_t seed) { return bg_norm(u, seed); }

namespace {

bool is_trivial_bundle(const FellBundle& b) {
  const auto& g = b.group();
  if (b.ambient_dim() != g.order()) return false;
  for (int s = 0; s < g.order(); ++s) {
    if (b.fiber(s).dim() != 1) return false;
    if (!b.fiber(s).contains(left_regular_matrix(g, s))) return false;
  }
  return true;
}

std::vector<Complex> theta_of_section(const Section& y) {
  const auto& g = y.bundle()->group();
  std::vector<Complex> out(g.order());
  for (int s = 0; s < g.order(); ++s)
    out[s] = hs_inner(left_regular_matrix(g, s), y.value(s)) / static_cast<double>(g.order());
  return out;
}

}  // namespace

std::vector<Complex> theta_coefficients(const Coefficient& c, bool eta_side) {
  return theta_of_section(eta_side ? c.eta() : c.xi());
}

ClassicalFunction tb_isomorphism(const Coefficient& c) {
  if (!is_trivial_bundle(*c.bundle()))
    throw std::invalid_argument("tb_isomorphism: coefficient is not over a trivial bundle");
  return classical_coefficient(c.bundle()->group(), theta_coefficients(c, false),
                               theta_coefficients(c, true));
}

}  // namespace fellb
