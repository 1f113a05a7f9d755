#include "fellb/subspace.hpp"

#include "fellb/matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

namespace fellb {

namespace {

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

}  // namespace

MatrixSubspace MatrixSubspace::zero(int ambient_dim) {
  MatrixSubspace s;
  s.ambient_ = ambient_dim;
  return s;
}

MatrixSubspace MatrixSubspace::full(int ambient_dim) {
  std::vector<ComplexMatrix> units;
  units.reserve(ambient_dim * ambient_dim);
  for (int i = 0; i < ambient_dim; ++i)
    for (int j = 0; j < ambient_dim; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(ambient_dim, ambient_dim);
      e(i, j) = 1.0;
      units.push_back(std::move(e));
    }
  return from_span(ambient_dim, units);
}

MatrixSubspace MatrixSubspace::from_span(int ambient_dim, std::span<const ComplexMatrix> generators) {
  MatrixSubspace s;
  s.ambient_ = ambient_dim;
  if (generators.empty()) return s;
  ComplexMatrix stack(ambient_dim * ambient_dim, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const ComplexMatrix& g = generators[k];
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("MatrixSubspace: generator shape mismatch");
    stack.col(static_cast<Eigen::Index>(k)) = vec(g);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(stack, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double cut = sv.size() ? tol::rank_rel * sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) s.basis_.push_back(unvec(svd.matrixU().col(i), ambient_dim));
  return s;
}

MatrixSubspace MatrixSubspace::from_span(int ambient_dim, const std::vector<ComplexMatrix>& generators) {
  return from_span(ambient_dim, std::span<const ComplexMatrix>(generators));
}

ComplexMatrix MatrixSubspace::project(const ComplexMatrix& x) const {
  ComplexMatrix p = ComplexMatrix::Zero(ambient_, ambient_);
  for (const auto& b : basis_) p += hs_inner(b, x) * b;
  return p;
}

double MatrixSubspace::membership_residual(const ComplexMatrix& x) const {
  return hs_norm(x - project(x));
}

bool MatrixSubspace::contains(const ComplexMatrix& x, double tolerance) const {
  if (x.rows() != ambient_ || x.cols() != ambient_) return false;
  return membership_residual(x) <= tolerance * (1.0 + hs_norm(x));
}

ComplexVector MatrixSubspace::coordinates(const ComplexMatrix& x) const {
  ComplexVector c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = hs_inner(basis_[i], x);
  return c;
}

ComplexMatrix MatrixSubspace::from_coordinates(const ComplexVector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("MatrixSubspace: coordinate size mismatch");
  ComplexMatrix x = ComplexMatrix::Zero(ambient_, ambient_);
  for (int i = 0; i < dim(); ++i) x += c(i) * basis_[i];
  return x;
}

bool MatrixSubspace::spans_same(const MatrixSubspace& other, double tolerance) const {
  if (ambient_ != other.ambient_ || dim() != other.dim()) return false;
  for (const auto& b : other.basis_)
    if (!contains(b, tolerance)) return false;
  return true;
}

double MatrixSubspace::gram_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Complex g = hs_inner(basis_[i], basis_[j]);
      worst = std::max(worst, std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))));
    }
  return worst;
}

ComplexMatrix MatrixSubspace::random_element(Rng& rng) const {
  ComplexMatrix x = ComplexMatrix::Zero(ambient_, ambient_);
  for (const auto& b : basis_) x += rng.cgauss() * b;
  return x;
}

MatrixSubspace subspace_intersection(const MatrixSubspace& a, const MatrixSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace_intersection: ambient mismatch");
  const int n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return MatrixSubspace::zero(n);
  ComplexMatrix m(n * n, a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i) m.col(i) = vec(a.basis()[i]);
  for (int j = 0; j < b.dim(); ++j) m.col(a.dim() + j) = -vec(b.basis()[j]);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  std::vector<ComplexMatrix> members;
  for (Eigen::Index k = 0; k < svd.matrixV().cols(); ++k) {
    double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= tol::rank_rel * (sv.size() ? sv(0) : 1.0)) {
      ComplexVector x = svd.matrixV().col(k).head(a.dim());
      members.push_back(a.from_coordinates(x));
    }
  }
  return MatrixSubspace::from_span(n, members);
}

MatrixSubspace subspace_sum(const MatrixSubspace& a, const MatrixSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspace_sum: ambient mismatch");
  std::vector<ComplexMatrix> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return MatrixSubspace::from_span(a.ambient_dim(), gens);
}

MatrixSubspace algebra_closure(std::span<const ComplexMatrix> generators) {
  if (generators.empty()) throw std::invalid_argument("algebra_closure: no generators");
  const int n = static_cast<int>(generators[0].rows());
  std::vector<ComplexMatrix> gens;
  for (const auto& g : generators) {
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  MatrixSubspace span = MatrixSubspace::from_span(n, gens);
  for (int round = 0; round <= n * n; ++round) {
    std::vector<ComplexMatrix> next = span.basis();
    for (const auto& x : span.basis())
      for (const auto& y : span.basis()) {
        next.push_back(x * y);
        next.push_back((x * y).adjoint());
      }
    MatrixSubspace grown = MatrixSubspace::from_span(n, next);
    if (grown.dim() == span.dim()) {
      if (!is_product_closed(grown) || !is_adjoint_closed(grown))
        throw std::logic_error("algebra_closure: span failed the closure re-check");
      return grown;
    }
    span = std::move(grown);
  }
  throw std::logic_error("algebra_closure: did not stabilize");
}

MatrixSubspace algebra_closure(const std::vector<ComplexMatrix>& generators) {
  return algebra_closure(std::span<const ComplexMatrix>(generators));
}

bool is_product_closed(const MatrixSubspace& s, double tolerance) {
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!s.contains(x * y, tolerance)) return false;
  return true;
}

bool is_adjoint_closed(const MatrixSubspace& s, double tolerance) {
  for (const auto& x : s.basis())
    if (!s.contains(x.adjoint(), tolerance)) return false;
  return true;
}

std::vector<ComplexMatrix> matrix_commutant(const std::vector<ComplexMatrix>& ops, int dim) {
  // vec(x R - R x) = (R^T kron I - I kron R) vec(x), column-major vec
  ComplexMatrix sys(static_cast<Eigen::Index>(ops.size()) * dim * dim, dim * dim);
  ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  for (std::size_t j = 0; j < ops.size(); ++j)
    sys.block(static_cast<Eigen::Index>(j) * dim * dim, 0, dim * dim, dim * dim) =
        kron(ops[j].transpose(), id) - kron(id, ops[j]);
  std::vector<ComplexMatrix> out;
  for (const auto& v : nullspace(sys))
    out.push_back(Eigen::Map<const ComplexMatrix>(v.data(), dim, dim));
  return out;
}

std::vector<int> BlockDecomposition::sizes_with_multiplicity() const {
  std::vector<int> out;
  for (const auto& b : blocks) out.push_back(b.size);
  std::sort(out.begin(), out.end());
  return out;
}

int BlockDecomposition::algebra_dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.size * b.size;
  return d;
}

namespace {

// Single-linkage clustering of sorted eigenvalues; refuses to guess when two
// clusters are closer than the guard factor times the threshold.
std::vector<std::pair<int, int>> cluster_eigenvalues(const RealVector& ev, const char* what) {
  const int n = static_cast<int>(ev.size());
  const double scale = 1.0 + std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  const double thr = tol::cluster * scale;
  std::vector<std::pair<int, int>> ranges;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || ev(i) - ev(i - 1) > thr) {
      ranges.emplace_back(start, i);
      if (i < n && ev(i) - ev(i - 1) < tol::cluster_guard * thr)
        throw degeneracy_error(std::string(what) + ": eigenvalue clusters too close to separate");
      start = i;
    }
  }
  return ranges;
}

// Nullspace of a constraint system whose rows are built from HS-normalized
// bases, so the natural scale is 1 and nonzero singular values are far from
// the noise floor. Solved through the Gram matrix: squaring costs half the
// digits, which the wide spectral gap of these systems tolerates, and the
// symmetric eigensolver is far cheaper than an SVD of the tall system.
std::vector<ComplexVector> nullspace(const ComplexMatrix& m) {
  ComplexMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const RealVector& ev = es.eigenvalues();
  const double lmax = ev.size() ? std::max(ev(ev.size() - 1), 0.0) : 0.0;
  const double cut = 1e-10 * std::max(lmax, 1.0);
  std::vector<ComplexVector> out;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) <= cut) out.push_back(es.eigenvectors().col(k));
  return out;
}

ComplexVector vec_of(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix random_selfadjoint_combo(const std::vector<ComplexMatrix>& basis, Rng& rng) {
  ComplexMatrix z = ComplexMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) z += rng.cgauss() * b;
  return 0.5 * (z + z.adjoint()).eval();
}

}  // namespace

BlockDecomposition block_decompose(const MatrixSubspace& algebra, std::uint64_t seed) {
  const int n = algebra.ambient_dim();
  const int d = algebra.dim();
  if (d == 0) throw std::invalid_argument("block_decompose: zero algebra");
  if (!is_product_closed(algebra) || !is_adjoint_closed(algebra))
    throw std::invalid_argument("block_decompose: subspace is not closed under products and adjoints");

  // Action space V = sum of ranges; the algebra acts unitally on V. The
  // basis elements are HS-normalized, so sum b b† has its range equal to V
  // and a clean spectral gap at zero.
  ComplexMatrix range_gram = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < d; ++k) range_gram += algebra.basis()[k] * algebra.basis()[k].adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> res(range_gram);
  const RealVector& rev = res.eigenvalues();
  const double rcut = 1e-10 * std::max(rev(n - 1), 1.0);
  int action_dim = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (rev(i) > rcut) ++action_dim;
  // eigenvalues ascend: the action space sits in the trailing columns
  ComplexMatrix q = res.eigenvectors().rightCols(action_dim);  // C^K -> C^n
  ComplexMatrix q_perp = res.eigenvectors().leftCols(n - action_dim);

  std::vector<ComplexMatrix> restricted(d);
  for (int k = 0; k < d; ++k) {
    restricted[k] = q.adjoint() * algebra.basis()[k] * q;
    double defect = (q * restricted[k] * q.adjoint() - algebra.basis()[k]).norm();
    if (defect > 1e-8 * (1.0 + algebra.basis()[k].norm()))
      throw degeneracy_error("block_decompose: algebra does not restrict cleanly to its action space");
  }
  // Unit on the action space.
  {
    MatrixSubspace ra = MatrixSubspace::from_span(action_dim, restricted);
    if (!ra.contains(ComplexMatrix::Identity(action_dim, action_dim)))
      throw degeneracy_error("block_decompose: no unit on the action space");
  }

  Rng rng(seed);

  // Center of the restricted algebra.
  ComplexMatrix center_sys(static_cast<Eigen::Index>(d) * action_dim * action_dim, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      center_sys.block(static_cast<Eigen::Index>(k) * action_dim * action_dim, j,
                       action_dim * action_dim, 1) =
          vec_of((restricted[j] * restricted[k] - restricted[k] * restricted[j]).eval());
  std::vector<ComplexMatrix> center;
  for (const auto& c : nullspace(center_sys)) {
    ComplexMatrix z = ComplexMatrix::Zero(action_dim, action_dim);
    for (int j = 0; j < d; ++j) z += c(j) * restricted[j];
    center.push_back(z);
  }
  if (center.empty()) throw degeneracy_error("block_decompose: empty center");

  // Minimal central projections from a generic self-adjoint central element.
  ComplexMatrix hz = random_selfadjoint_combo(center, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> zes(hz);
  auto central_ranges = cluster_eigenvalues(zes.eigenvalues(), "block_decompose/center");

  BlockDecomposition out;
  out.action_dim = action_dim;
  std::vector<ComplexMatrix> unitary_cols;

  for (auto [lo, hi] : central_ranges) {
    const int ki = hi - lo;
    ComplexMatrix pi = zes.eigenvectors().middleCols(lo, ki);  // C^{ki} -> C^K

    // Restriction of the algebra to this isotypic summand.
    std::vector<ComplexMatrix> summand_gens(d);
    for (int k = 0; k < d; ++k) summand_gens[k] = pi.adjoint() * restricted[k] * pi;
    MatrixSubspace summand_alg = MatrixSubspace::from_span(ki, summand_gens);
    const int di = summand_alg.dim();

    // Block size and multiplicity from a generic self-adjoint algebra element.
    ComplexMatrix ha = random_selfadjoint_combo(summand_alg.basis(), rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> aes(ha, Eigen::EigenvaluesOnly);
    auto spec = cluster_eigenvalues(aes.eigenvalues(), "block_decompose/summand");
    const int size = static_cast<int>(spec.size());
    const int mult = spec.front().second - spec.front().first;
    for (auto [a, b] : spec)
      if (b - a != mult)
        throw degeneracy_error("block_decompose: uneven spectral multiplicities in a summand");
    if (size * size != di || size * mult != ki)
      throw degeneracy_error("block_decompose: inconsistent summand dimensions");

    // Commutant of the summand gives the copies of the irreducible block.
    auto comm = matrix_commutant(summand_alg.basis(), ki);
    if (static_cast<int>(comm.size()) != mult * mult)
      throw degeneracy_error("block_decompose: commutant dimension mismatch");
    ComplexMatrix hc = random_selfadjoint_combo(comm, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ces(hc);
    auto copies = cluster_eigenvalues(ces.eigenvalues(), "block_decompose/commutant");
    if (static_cast<int>(copies.size()) != mult)
      throw degeneracy_error("block_decompose: copy count mismatch");

    std::vector<ComplexMatrix> w;  // eigenspace isometries, each ki x size
    for (auto [a, b] : copies) {
      if (b - a != size) throw degeneracy_error("block_decompose: copy dimension mismatch");
      w.push_back(ces.eigenvectors().middleCols(a, b - a));
    }

    // Unitary intertwiners aligning every copy with the first; Schur forces
    // P_j y P_1 to be a scalar multiple of a unitary for y in the commutant.
    std::vector<ComplexMatrix> copy_iso;
    for (int j = 0; j < mult; ++j) {
      ComplexMatrix uj;
      if (j == 0) {
        uj = ComplexMatrix::Identity(size, size);
      } else {
        bool found = false;
        for (int attempt = 0; attempt < 16 && !found; ++attempt) {
          ComplexMatrix y = ComplexMatrix::Zero(ki, ki);
          for (const auto& cb : comm) y += rng.cgauss() * cb;
          ComplexMatrix t = w[j].adjoint() * y * w[0];
          Eigen::JacobiSVD<ComplexMatrix> tsvd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
          const RealVector& tsv = tsvd.singularValues();
          if (tsv(0) < 1e-8) continue;
          if (tsv(tsv.size() - 1) < 0.5 * tsv(0)) continue;  // must be scalar x unitary
          uj = tsvd.matrixU() * tsvd.matrixV().adjoint();
          found = true;
        }
        if (!found) throw degeneracy_error("block_decompose: could not align a block copy");
      }
      ComplexMatrix col = q * (pi * (w[j] * uj));  // n x size
      copy_iso.push_back(col);
      unitary_cols.push_back(col);
    }
    out.blocks.push_back({mult, size});
    out.copy_isometries.push_back(std::move(copy_iso));
  }

  // Canonical block order: ascending size, then multiplicity.
  {
    std::vector<std::size_t> perm(out.blocks.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      if (out.blocks[a].size != out.blocks[b].size) return out.blocks[a].size < out.blocks[b].size;
      return out.blocks[a].multiplicity < out.blocks[b].multiplicity;
    });
    std::vector<BlockDecomposition::Block> blocks;
    std::vector<std::vector<ComplexMatrix>> isos;
    for (std::size_t i : perm) {
      blocks.push_back(out.blocks[i]);
      isos.push_back(out.copy_isometries[i]);
    }
    out.blocks = std::move(blocks);
    out.copy_isometries = std::move(isos);
  }

  out.unitary = ComplexMatrix(n, n);
  int col = 0;
  for (const auto& copies : out.copy_isometries)
    for (const auto& iso : copies) {
      out.unitary.middleCols(col, iso.cols()) = iso;
      col += static_cast<int>(iso.cols());
    }
  out.unitary.rightCols(n - action_dim) = q_perp;

  double udef = (out.unitary.adjoint() * out.unitary - ComplexMatrix::Identity(n, n)).norm();
  if (udef > tol::unitary * n) throw degeneracy_error("block_decompose: change of basis is not unitary");

  // Reassembly check: conjugation block-diagonalizes every basis element with
  // all copies of a summand equal.
  double worst = 0.0;
  for (const auto& b : algebra.basis()) {
    ComplexMatrix conj = out.unitary.adjoint() * b * out.unitary;
    ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
    int off = 0;
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
      const int sz = out.blocks[i].size;
      ComplexMatrix first = conj.block(off, off, sz, sz);
      for (int j = 0; j < out.blocks[i].multiplicity; ++j) {
        rebuilt.block(off + j * sz, off + j * sz, sz, sz) = first;
      }
      off += out.blocks[i].multiplicity * sz;
    }
    worst = std::max(worst, (conj - rebuilt).norm());
  }
  out.residual = worst;
  if (worst > tol::block_residual * (1.0 + static_cast<double>(n)))
    throw degeneracy_error("block_decompose: reassembly residual too large");
  return out;
}

}  // namespace fellb
