#include "fellb/matrix.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace fellb {

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  // The top singular value through m† m loses no relative accuracy and the
  // symmetric solver is much faster at the dimensions the localized
  // representations reach.
  if (std::min(m.rows(), m.cols()) >= 16) {
    ComplexMatrix gram = m.rows() >= m.cols() ? (m.adjoint() * m).eval() : (m * m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues()(gram.rows() - 1), 0.0));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool psd_check(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_check: matrix not square");
  if (m.size() == 0) return true;
  const double scale = tol * (1.0 + operator_norm(m));
  if (operator_norm(m - m.adjoint()) > scale) return false;
  return hermitian_eigenvalues(m)(0) >= -scale;
}

PolarDecomposition polar_decompose(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("polar_decompose: matrix not square");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cut = sv.size() ? tol::rank_rel * sv(0) : 0.0;
  PolarDecomposition out;
  out.psd = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
  out.partial_isometry = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut)
      out.partial_isometry += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_sqrt: matrix not square");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace fellb
