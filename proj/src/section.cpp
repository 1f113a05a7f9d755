#include "fellb/section.hpp"

#include "fellb/matrix.hpp"

#include <stdexcept>

namespace fellb {

Section::Section(BundlePtr bundle, std::vector<ComplexMatrix> values)
    : bundle_(std::move(bundle)), values_(std::move(values)) {
  if (!bundle_) throw std::invalid_argument("Section: null bundle");
  const int order = bundle_->group().order();
  if (static_cast<int>(values_.size()) != order)
    throw std::invalid_argument("Section: one value per group element required");
  for (int s = 0; s < order; ++s) {
    ComplexMatrix projected = bundle_->fiber(s).project(values_[s]);
    double residual = hs_norm(values_[s] - projected);
    if (residual > tol::membership * (1.0 + hs_norm(values_[s])))
      throw std::invalid_argument("Section: value at element " + std::to_string(s) +
                                  " is not in its fiber (residual " + std::to_string(residual) + ")");
    values_[s] = std::move(projected);
  }
}

Section Section::zero(BundlePtr bundle) {
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> vals(bundle->group().order(), ComplexMatrix::Zero(n, n));
  return Section(std::move(bundle), std::move(vals));
}

std::vector<int> Section::support(double tolerance) const {
  std::vector<int> out;
  for (int s = 0; s < bundle_->group().order(); ++s)
    if (hs_norm(values_[s]) > tolerance) out.push_back(s);
  return out;
}

Section& Section::operator+=(const Section& other) {
  require_same_bundle(*this, other);
  for (std::size_t s = 0; s < values_.size(); ++s) values_[s] += other.values_[s];
  return *this;
}

Section& Section::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

Section operator-(const Section& a, const Section& b) {
  Section out = a;
  return out += Complex(-1.0) * b;
}

void require_same_bundle(const Section& a, const Section& b) {
  if (a.bundle() != b.bundle()) throw std::invalid_argument("sections live over different bundles");
}

Section j_embed(BundlePtr bundle, int s, const ComplexMatrix& m) {
  if (!bundle->fiber(s).contains(m))
    throw std::invalid_argument("j_embed: matrix is not in the fiber over element " + std::to_string(s));
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> vals(bundle->group().order(), ComplexMatrix::Zero(n, n));
  vals[s] = m;
  return Section(std::move(bundle), std::move(vals));
}

Section convolve(const Section& y, const Section& z) {
  require_same_bundle(y, z);
  const auto& g = y.bundle()->group();
  const int n = y.bundle()->ambient_dim();
  std::vector<ComplexMatrix> vals(g.order(), ComplexMatrix::Zero(n, n));
  for (int t = 0; t < g.order(); ++t) {
    if (y.value(t).isZero(0)) continue;
    for (int u = 0; u < g.order(); ++u) vals[g.mul(t, u)] += y.value(t) * z.value(u);
  }
  return Section(y.bundle(), std::move(vals));
}

Section involute(const Section& y) {
  const auto& g = y.bundle()->group();
  const int n = y.bundle()->ambient_dim();
  std::vector<ComplexMatrix> vals(g.order(), ComplexMatrix::Zero(n, n));
  for (int s = 0; s < g.order(); ++s) vals[s] = y.value(g.inv(s)).adjoint();
  return Section(y.bundle(), std::move(vals));
}

double l1_norm(const Section& y) {
  double total = 0.0;
  for (const auto& v : y.values()) total += operator_norm(v);
  return total;
}

ComplexMatrix module_inner_product(const Section& y, const Section& z) {
  require_same_bundle(y, z);
  const int n = y.bundle()->ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int s = 0; s < y.bundle()->group().order(); ++s) out += y.value(s).adjoint() * z.value(s);
  return out;
}

double l2_norm(const Section& y) {
  return std::sqrt(operator_norm(module_inner_product(y, y)));
}

Section random_section(BundlePtr bundle, Rng& rng) {
  std::vector<ComplexMatrix> vals;
  vals.reserve(bundle->group().order());
  for (int s = 0; s < bundle->group().order(); ++s) {
    ComplexMatrix v = ComplexMatrix::Zero(bundle->ambient_dim(), bundle->ambient_dim());
    for (const auto& b : bundle->fiber(s).basis()) v += rng.cgauss() * b;
    vals.push_back(std::move(v));
  }
  return Section(std::move(bundle), std::move(vals));
}

Section random_section_supported(BundlePtr bundle, const std::vector<int>& support, Rng& rng) {
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> vals(bundle->group().order(), ComplexMatrix::Zero(n, n));
  for (int s : support)
    for (const auto& b : bundle->fiber(s).basis()) vals[s] += rng.cgauss() * b;
  return Section(std::move(bundle), std::move(vals));
}

Section indicator_section(const DynamicalBundle& db, const std::vector<int>& v) {
  const int n = db.bundle()->ambient_dim();
  std::vector<ComplexMatrix> vals(db.bundle()->group().order(), ComplexMatrix::Zero(n, n));
  for (int s : v) vals[s] = db.unit_element(s);
  return Section(db.bundle(), std::move(vals));
}

}  // namespace fellb
