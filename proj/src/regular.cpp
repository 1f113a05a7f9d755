#include "fellb/regular.hpp"

#include "fellb/matrix.hpp"

#include <stdexcept>

namespace fellb {

namespace {

// Deterministic orthonormal basis of the column space, by modified
// Gram-Schmidt with reorthogonalization. Keeps permutation-like fibers in
// the standard basis, which makes the localized matrices easy to read.
ComplexMatrix column_space_isometry(const std::vector<ComplexMatrix>& mats, int n) {
  std::vector<ComplexVector> cols;
  double scale = 0.0;
  for (const auto& m : mats)
    for (Eigen::Index j = 0; j < m.cols(); ++j) scale = std::max(scale, m.col(j).norm());
  if (scale == 0.0) return ComplexMatrix(n, 0);
  std::vector<ComplexVector> basis;
  for (const auto& m : mats)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      ComplexVector v = m.col(j);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= (b.adjoint() * v)(0, 0) * b;
      if (v.norm() > tol::rank_rel * scale) basis.push_back(v.normalized());
    }
  ComplexMatrix q(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) q.col(static_cast<Eigen::Index>(i)) = basis[i];
  return q;
}

}  // namespace

RegularRep::RegularRep(BundlePtr bundle) : bundle_(std::move(bundle)) {
  const auto& g = bundle_->group();
  const int n = bundle_->ambient_dim();
  isometries_.reserve(g.order());
  offsets_.reserve(g.order());
  for (int s = 0; s < g.order(); ++s) {
    isometries_.push_back(column_space_isometry(bundle_->fiber(s).basis(), n));
    offsets_.push_back(dim_);
    dim_ += static_cast<int>(isometries_.back().cols());
  }
}

ComplexMatrix RegularRep::matrix(const Section& f) const {
  if (f.bundle() != bundle_) throw std::invalid_argument("RegularRep: section over a different bundle");
  const auto& g = bundle_->group();
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int row = 0; row < g.order(); ++row)
    for (int col = 0; col < g.order(); ++col) {
      // block (row, col) carries f at s = row col^{-1}
      const ComplexMatrix& fs = f.value(g.mul(row, g.inv(col)));
      if (fs.isZero(0)) continue;
      out.block(offsets_[row], offsets_[col], component_dim(row), component_dim(col)) =
          isometries_[row].adjoint() * fs * isometries_[col];
    }
  return out;
}

ComplexMatrix RegularRep::matrix(int s, const ComplexMatrix& b) const {
  const auto& g = bundle_->group();
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int t = 0; t < g.order(); ++t) {
    int st = g.mul(s, t);
    out.block(offsets_[st], offsets_[t], component_dim(st), component_dim(t)) =
        isometries_[st].adjoint() * b * isometries_[t];
  }
  return out;
}

ComplexVector RegularRep::vector(const Section& y, const ComplexVector& v) const {
  if (y.bundle() != bundle_) throw std::invalid_argument("RegularRep: section over a different bundle");
  ComplexVector out = ComplexVector::Zero(dim_);
  for (int s = 0; s < bundle_->group().order(); ++s)
    out.segment(offsets_[s], component_dim(s)) = isometries_[s].adjoint() * (y.value(s) * v);
  return out;
}

double universal_norm(const RegularRep& rep, const Section& f) {
  return operator_norm(rep.matrix(f));
}

ComplexMatrix BundleRep::apply(int s, const ComplexMatrix& b) const {
  // expands b on the fiber basis; components orthogonal to the fiber do not
  // contribute, so callers are expected to pass fiber members
  const auto& fiber = bundle->fiber(s);
  ComplexVector c = fiber.coordinates(b);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < fiber.dim(); ++i) out += c(i) * ops[s][i];
  return out;
}

double BundleRep::representation_residual() const {
  const auto& g = bundle->group();
  double worst = 0.0;
  for (int s = 0; s < g.order(); ++s) {
    for (int i = 0; i < bundle->fiber(s).dim(); ++i) {
      const ComplexMatrix& x = bundle->fiber(s).basis()[i];
      worst = std::max(worst, (ops[s][i].adjoint() - apply(g.inv(s), x.adjoint())).norm());
      for (int t = 0; t < g.order(); ++t)
        for (int j = 0; j < bundle->fiber(t).dim(); ++j) {
          const ComplexMatrix& y = bundle->fiber(t).basis()[j];
          worst = std::max(worst, (ops[s][i] * ops[t][j] - apply(g.mul(s, t), x * y)).norm());
        }
    }
  }
  return worst;
}

BundleRep materialize(const RegularRep& rep) {
  BundleRep out;
  out.bundle = rep.bundle();
  out.dim = rep.dim();
  const auto& g = out.bundle->group();
  out.ops.resize(g.order());
  for (int s = 0; s < g.order(); ++s)
    for (const auto& b : out.bundle->fiber(s).basis()) out.ops[s].push_back(rep.matrix(s, b));
  return out;
}

CStarPresentation::CStarPresentation(BundlePtr bundle, std::uint64_t seed)
    : bundle_(std::move(bundle)),
      rep_(bundle_),
      dual_([&] {
        std::vector<ComplexMatrix> images;
        for (int s = 0; s < bundle_->group().order(); ++s)
          for (const auto& b : bundle_->fiber(s).basis()) images.push_back(rep_.matrix(s, b));
        return MatrixSubspace::from_span(rep_.dim(), images);
      }(), seed) {
  const auto& g = bundle_->group();
  std::vector<ComplexMatrix> images;
  for (int s = 0; s < g.order(); ++s)
    for (int i = 0; i < bundle_->fiber(s).dim(); ++i) {
      images.push_back(rep_.matrix(s, bundle_->fiber(s).basis()[i]));
      flat_index_.emplace_back(s, i);
    }
  faithful_ = dual_.algebra().dim() == bundle_->total_fiber_dim();
  if (!faithful_)
    throw std::logic_error("CStarPresentation: regular representation is not faithful on sections");

  // lambda^{-1}: least squares against the stacked images.
  const int big = rep_.dim() * rep_.dim();
  ComplexMatrix stack(big, static_cast<Eigen::Index>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    stack.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const ComplexVector>(images[k].data(), big);
  lambda_solver_.compute(stack);

  basis_sections_.reserve(dual_.algebra().dim());
  for (const auto& a : dual_.algebra().basis()) basis_sections_.push_back(section_of(a));
}

Section CStarPresentation::section_of(const ComplexMatrix& algebra_element) const {
  const int big = rep_.dim() * rep_.dim();
  ComplexVector target = Eigen::Map<const ComplexVector>(algebra_element.data(), big);
  ComplexVector coeff = lambda_solver_.solve(target);
  const auto& g = bundle_->group();
  const int n = bundle_->ambient_dim();
  std::vector<ComplexMatrix> vals(g.order(), ComplexMatrix::Zero(n, n));
  for (std::size_t k = 0; k < flat_index_.size(); ++k) {
    auto [s, i] = flat_index_[k];
    vals[s] += coeff(static_cast<Eigen::Index>(k)) * bundle_->fiber(s).basis()[i];
  }
  return Section(bundle_, std::move(vals));
}

}  // namespace fellb
