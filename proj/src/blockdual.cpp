#include "fellb/blockdual.hpp"

#include "fellb/matrix.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace fellb {

BlockDualContext::BlockDualContext(MatrixSubspace algebra, std::uint64_t seed)
    : algebra_(std::move(algebra)), dec_(block_decompose(algebra_, seed)) {
  // Linear map from the values of tau on the algebra basis to the stacked
  // entries of the component matrices: tau(a) = sum_i tr(F_i a_i), and the
  // entry F_i(p,q) equals tau of the element whose summand-i block is the
  // matrix unit E(q,p).
  int total = 0;
  comp_offsets_.clear();
  for (const auto& b : dec_.blocks) {
    comp_offsets_.push_back(total);
    total += b.size * b.size;
  }
  comp_map_ = ComplexMatrix::Zero(total, algebra_.dim());
  for (int i = 0; i < summands(); ++i) {
    const int sz = dec_.blocks[i].size;
    for (int p = 0; p < sz; ++p)
      for (int q = 0; q < sz; ++q) {
        std::vector<ComplexMatrix> blocks(summands());
        for (int k = 0; k < summands(); ++k)
          blocks[k] = ComplexMatrix::Zero(dec_.blocks[k].size, dec_.blocks[k].size);
        blocks[i](q, p) = 1.0;
        ComplexMatrix x = element_from_blocks(blocks);
        if (!algebra_.contains(x, 1e-7))
          throw degeneracy_error("BlockDualContext: block unit is not in the algebra");
        comp_map_.row(comp_offsets_[i] + p * sz + q) = algebra_.coordinates(x).transpose();
      }
  }
}

std::vector<ComplexMatrix> BlockDualContext::components(const ComplexVector& tau_on_basis) const {
  if (tau_on_basis.size() != algebra_.dim())
    throw std::invalid_argument("BlockDualContext: tau size mismatch");
  ComplexVector stacked = comp_map_ * tau_on_basis;
  std::vector<ComplexMatrix> out(summands());
  for (int i = 0; i < summands(); ++i) {
    const int sz = dec_.blocks[i].size;
    out[i] = ComplexMatrix(sz, sz);
    for (int p = 0; p < sz; ++p)
      for (int q = 0; q < sz; ++q) out[i](p, q) = stacked(comp_offsets_[i] + p * sz + q);
  }
  return out;
}

double BlockDualContext::dual_norm_of(const std::vector<ComplexMatrix>& comps) {
  double total = 0.0;
  for (const auto& f : comps) total += trace_norm(f);
  return total;
}

double BlockDualContext::dual_norm(const ComplexVector& tau_on_basis) const {
  return dual_norm_of(components(tau_on_basis));
}

ComplexMatrix BlockDualContext::element_from_blocks(const std::vector<ComplexMatrix>& block_values) const {
  const int n = algebra_.ambient_dim();
  if (static_cast<int>(block_values.size()) != summands())
    throw std::invalid_argument("BlockDualContext: block count mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < summands(); ++i)
    for (const auto& iso : dec_.copy_isometries[i]) out += iso * block_values[i] * iso.adjoint();
  return out;
}

ComplexMatrix BlockDualContext::polar_optimal(const std::vector<ComplexMatrix>& comps) const {
  std::vector<ComplexMatrix> blocks(summands());
  for (int i = 0; i < summands(); ++i) {
    Eigen::JacobiSVD<ComplexMatrix> svd(comps[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
    blocks[i] = svd.matrixV() * svd.matrixU().adjoint();  // tr(F_i blocks_i) = ||F_i||_1
  }
  return element_from_blocks(blocks);
}

ComplexMatrix BlockDualContext::summand_of(const ComplexMatrix& a, int i) const {
  const auto& iso = dec_.copy_isometries.at(i).front();
  return iso.adjoint() * a * iso;
}

ComplexVector BlockDualContext::tau_from_components(const std::vector<ComplexMatrix>& comps) const {
  ComplexVector tau(algebra_.dim());
  for (int k = 0; k < algebra_.dim(); ++k) {
    Complex acc = 0.0;
    for (int i = 0; i < summands(); ++i)
      acc += (comps[i] * summand_of(algebra_.basis()[k], i)).trace();
    tau(k) = acc;
  }
  return tau;
}

}  // namespace fellb
