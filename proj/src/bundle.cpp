#include "fellb/bundle.hpp"

#include "fellb/matrix.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <stdexcept>

namespace fellb {

namespace {

// Unit of a *-closed matrix subspace viewed as an algebra, or an empty
// matrix if none exists.
ComplexMatrix algebra_unit(const MatrixSubspace& a) {
  const int d = a.dim();
  if (d == 0) return {};
  const int n = a.ambient_dim();
  ComplexMatrix sys(2 * d * n * n, d);
  ComplexVector rhs(2 * d * n * n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix left = a.basis()[j] * a.basis()[i];
      ComplexMatrix right = a.basis()[i] * a.basis()[j];
      sys.block(2 * i * n * n, j, n * n, 1) = Eigen::Map<const ComplexVector>(left.data(), n * n);
      sys.block((2 * i + 1) * n * n, j, n * n, 1) = Eigen::Map<const ComplexVector>(right.data(), n * n);
    }
    rhs.segment(2 * i * n * n, n * n) = Eigen::Map<const ComplexVector>(a.basis()[i].data(), n * n);
    rhs.segment((2 * i + 1) * n * n, n * n) =
        Eigen::Map<const ComplexVector>(a.basis()[i].data(), n * n);
  }
  ComplexVector c = sys.completeOrthogonalDecomposition().solve(rhs);
  if ((sys * c - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) return {};
  return a.from_coordinates(c);
}

}  // namespace

FellBundle::FellBundle(FiniteGroup group, int ambient_dim, std::vector<MatrixSubspace> fibers)
    : group_(std::move(group)), ambient_(ambient_dim), fibers_(std::move(fibers)) {
  if (static_cast<int>(fibers_.size()) != group_.order())
    throw std::invalid_argument("FellBundle: one fiber per group element required");
  for (const auto& f : fibers_)
    if (f.ambient_dim() != ambient_)
      throw std::invalid_argument("FellBundle: fiber ambient dimension mismatch");
  unit_ = algebra_unit(fibers_[group_.identity()]);
}

int FellBundle::total_fiber_dim() const {
  int d = 0;
  for (const auto& f : fibers_) d += f.dim();
  return d;
}

bool AxiomReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

double AxiomReport::worst_residual() const {
  double w = 0.0;
  for (const auto& c : checks) w = std::max(w, c.residual);
  return w;
}

AxiomReport verify_bundle_axioms(const FellBundle& b) {
  const auto& g = b.group();
  AxiomReport report;

  {
    AxiomCheck c{"fiber-bases-orthonormal", true, 0.0};
    for (int s = 0; s < g.order(); ++s) c.residual = std::max(c.residual, b.fiber(s).gram_residual());
    c.pass = c.residual < tol::gram * 10;
    report.checks.push_back(c);
  }
  {
    AxiomCheck c{"grading-inclusion", true, 0.0};  // B_s B_t inside B_st
    for (int s = 0; s < g.order(); ++s)
      for (int t = 0; t < g.order(); ++t) {
        const auto& target = b.fiber(g.mul(s, t));
        for (const auto& x : b.fiber(s).basis())
          for (const auto& y : b.fiber(t).basis()) {
            ComplexMatrix p = x * y;
            c.residual =
                std::max(c.residual, target.membership_residual(p) / (1.0 + hs_norm(p)));
          }
      }
    c.pass = c.residual < tol::axiom;
    report.checks.push_back(c);
  }
  {
    AxiomCheck c{"involution-symmetry", true, 0.0};  // B_s† = B_{s^{-1}}
    bool dims_ok = true;
    for (int s = 0; s < g.order(); ++s) {
      const auto& target = b.fiber(g.inv(s));
      if (target.dim() != b.fiber(s).dim()) dims_ok = false;
      for (const auto& x : b.fiber(s).basis()) {
        ComplexMatrix xa = x.adjoint();
        c.residual = std::max(c.residual, target.membership_residual(xa) / (1.0 + hs_norm(xa)));
      }
    }
    if (!dims_ok) c.residual = std::max(c.residual, 1.0);
    c.pass = dims_ok && c.residual < tol::axiom;
    report.checks.push_back(c);
  }
  {
    AxiomCheck c{"unit-fiber-star-subalgebra", true, 0.0};
    const auto& be = b.fiber(g.identity());
    for (const auto& x : be.basis()) {
      c.residual = std::max(c.residual, be.membership_residual(x.adjoint()) / (1.0 + hs_norm(x)));
      for (const auto& y : be.basis()) {
        ComplexMatrix p = x * y;
        c.residual = std::max(c.residual, be.membership_residual(p) / (1.0 + hs_norm(p)));
      }
    }
    c.pass = c.residual < tol::axiom;
    report.checks.push_back(c);
  }
  return report;
}

bool is_saturated(const FellBundle& b) {
  const auto& g = b.group();
  for (int s = 0; s < g.order(); ++s)
    for (int t = 0; t < g.order(); ++t) {
      std::vector<ComplexMatrix> products;
      for (const auto& x : b.fiber(s).basis())
        for (const auto& y : b.fiber(t).basis()) products.push_back(x * y);
      MatrixSubspace span = MatrixSubspace::from_span(b.ambient_dim(), products);
      if (span.dim() != b.fiber(g.mul(s, t)).dim()) return false;
    }
  return true;
}

ComplexMatrix left_regular_matrix(const FiniteGroup& g, int s) {
  ComplexMatrix p = ComplexMatrix::Zero(g.order(), g.order());
  for (int t = 0; t < g.order(); ++t) p(g.mul(s, t), t) = 1.0;
  return p;
}

BundlePtr trivial_bundle(const FiniteGroup& g) {
  std::vector<MatrixSubspace> fibers;
  fibers.reserve(g.order());
  for (int s = 0; s < g.order(); ++s)
    fibers.push_back(MatrixSubspace::from_span(g.order(), {left_regular_matrix(g, s)}));
  return std::make_shared<FellBundle>(g, g.order(), std::move(fibers));
}

ComplexMatrix DynamicalSystem::apply(int s, const ComplexMatrix& a) const {
  return algebra.from_coordinates(action.at(s) * algebra.coordinates(a));
}

double DynamicalSystem::validate() const {
  const int d = algebra.dim();
  const int n = algebra.ambient_dim();
  double worst = 0.0;
  if (static_cast<int>(action.size()) != group.order()) return 1.0;
  if (!algebra.contains(ComplexMatrix::Identity(n, n))) return 1.0;
  worst = std::max(worst, (action[group.identity()] - ComplexMatrix::Identity(d, d)).norm());
  for (int s = 0; s < group.order(); ++s) {
    for (int t = 0; t < group.order(); ++t)
      worst = std::max(worst, (action[s] * action[t] - action[group.mul(s, t)]).norm());
    for (int i = 0; i < d; ++i) {
      const ComplexMatrix gi = apply(s, algebra.basis()[i]);
      worst = std::max(worst, (apply(s, algebra.basis()[i].adjoint()) - gi.adjoint()).norm());
      for (int j = 0; j < d; ++j)
        worst = std::max(
            worst, (apply(s, (algebra.basis()[i] * algebra.basis()[j]).eval()) -
                    gi * apply(s, algebra.basis()[j]))
                       .norm());
    }
    worst = std::max(worst,
                     (apply(s, ComplexMatrix::Identity(n, n)) - ComplexMatrix::Identity(n, n)).norm());
  }
  return worst;
}

DynamicalSystem trivial_system(MatrixSubspace algebra, FiniteGroup g) {
  const int d = algebra.dim();
  std::vector<ComplexMatrix> action(g.order(), ComplexMatrix::Identity(d, d));
  DynamicalSystem sys{std::move(algebra), std::move(g), std::move(action)};
  if (sys.validate() > tol::axiom) throw std::invalid_argument("trivial_system: invalid input algebra");
  return sys;
}

DynamicalSystem conjugation_system(MatrixSubspace algebra, FiniteGroup g,
                                   std::vector<ComplexMatrix> unitaries) {
  if (static_cast<int>(unitaries.size()) != g.order())
    throw std::invalid_argument("conjugation_system: one unitary per group element");
  const int d = algebra.dim();
  std::vector<ComplexMatrix> action(g.order());
  for (int s = 0; s < g.order(); ++s) {
    action[s] = ComplexMatrix(d, d);
    for (int i = 0; i < d; ++i) {
      ComplexMatrix img = unitaries[s] * algebra.basis()[i] * unitaries[s].adjoint();
      if (algebra.membership_residual(img) > tol::membership * (1.0 + hs_norm(img)))
        throw std::invalid_argument("conjugation_system: unitary does not normalize the algebra");
      action[s].col(i) = algebra.coordinates(img);
    }
  }
  DynamicalSystem sys{std::move(algebra), std::move(g), std::move(action)};
  if (sys.validate() > tol::axiom)
    throw std::invalid_argument("conjugation_system: unitaries do not define an action");
  return sys;
}

DynamicalBundle::DynamicalBundle(BundlePtr bundle, DynamicalSystem sys)
    : bundle_(std::move(bundle)), sys_(std::move(sys)) {}

ComplexMatrix DynamicalBundle::insert(int s, const ComplexMatrix& a) const {
  const auto& g = sys_.group;
  const int m = sys_.algebra.ambient_dim();
  const int order = g.order();
  ComplexMatrix out = ComplexMatrix::Zero(m * order, m * order);
  for (int t = 0; t < order; ++t) {
    // block (t, s^{-1} t) = gamma_{t^{-1}}(a)
    ComplexMatrix blk = sys_.apply(g.inv(t), a);
    int u = g.mul(g.inv(s), t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(i * order + t, j * order + u) = blk(i, j);
  }
  return out;
}

ComplexMatrix DynamicalBundle::algebra_part(int s, const ComplexMatrix& m) const {
  const auto& g = sys_.group;
  const int order = g.order();
  const int dim = sys_.algebra.ambient_dim();
  ComplexMatrix a(dim, dim);
  const int u = g.inv(s);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = m(i * order + g.identity(), j * order + u);
  return a;
}

ComplexMatrix DynamicalBundle::unit_element(int s) const {
  const int n = sys_.algebra.ambient_dim();
  return insert(s, ComplexMatrix::Identity(n, n));
}

DynamicalBundle dynamical_bundle(const DynamicalSystem& sys) {
  double defect = sys.validate();
  if (defect > tol::axiom)
    throw std::invalid_argument("dynamical_bundle: action fails the automorphism laws");
  const int m = sys.algebra.ambient_dim();
  if (!sys.algebra.contains(ComplexMatrix::Identity(m, m)))
    throw std::invalid_argument("dynamical_bundle: algebra must be unital");

  const auto& g = sys.group;
  DynamicalBundle scratch(nullptr, sys);
  std::vector<MatrixSubspace> fibers;
  fibers.reserve(g.order());
  for (int s = 0; s < g.order(); ++s) {
    std::vector<ComplexMatrix> gens;
    gens.reserve(sys.algebra.dim());
    for (const auto& a : sys.algebra.basis()) gens.push_back(scratch.insert(s, a));
    fibers.push_back(MatrixSubspace::from_span(m * g.order(), gens));
  }
  auto bundle = std::make_shared<FellBundle>(g, m * g.order(), std::move(fibers));
  return DynamicalBundle(std::move(bundle), sys);
}

DynamicalBundle trivial_dynamical_bundle(const FiniteGroup& g) {
  MatrixSubspace scalars = MatrixSubspace::from_span(1, {ComplexMatrix::Identity(1, 1)});
  return dynamical_bundle(trivial_system(std::move(scalars), g));
}

BundlePtr graded_bundle(const MatrixSubspace& algebra, const FiniteGroup& g,
                        const std::vector<std::vector<int>>& grade) {
  const int n = algebra.ambient_dim();
  if (static_cast<int>(grade.size()) != n)
    throw std::invalid_argument("graded_bundle: grade table must be ambient x ambient");
  for (const auto& row : grade) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("graded_bundle: grade table must be ambient x ambient");
    for (int v : row)
      if (v < 0 || v >= g.order()) throw std::invalid_argument("graded_bundle: grade out of range");
  }
  for (int i = 0; i < n; ++i)
    if (grade[i][i] != g.identity())
      throw std::invalid_argument("graded_bundle: grade(i,i) must be the identity");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.mul(grade[i][j], grade[j][k]) != grade[i][k])
          throw std::invalid_argument("graded_bundle: grading is not multiplicative");

  std::vector<MatrixSubspace> fibers;
  int covered = 0;
  for (int s = 0; s < g.order(); ++s) {
    std::vector<ComplexMatrix> units;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (grade[i][j] == s) {
          ComplexMatrix e = ComplexMatrix::Zero(n, n);
          e(i, j) = 1.0;
          units.push_back(std::move(e));
        }
    MatrixSubspace graded_part = MatrixSubspace::from_span(n, units);
    MatrixSubspace fiber = subspace_intersection(graded_part, algebra);
    covered += fiber.dim();
    fibers.push_back(std::move(fiber));
  }
  if (covered != algebra.dim())
    throw std::invalid_argument("graded_bundle: graded parts do not exhaust the algebra");
  return std::make_shared<FellBundle>(g, n, std::move(fibers));
}

SpectralBundle spectral_bundle(const DynamicalSystem& sys, std::uint64_t seed) {
  if (!sys.group.is_abelian()) throw std::invalid_argument("spectral_bundle: group must be abelian");
  if (sys.validate() > tol::axiom) throw std::invalid_argument("spectral_bundle: invalid action");
  auto chars = dual_group(sys.group, seed);
  FiniteGroup dual = dual_group_as_group(sys.group, chars);

  const int d = sys.algebra.dim();
  const int order = sys.group.order();
  std::vector<MatrixSubspace> fibers;
  int covered = 0;
  for (const auto& chi : chars) {
    // isotypic projection (1/|G|) sum_s conj(chi(s)) gamma_s on coordinates
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    for (int s = 0; s < order; ++s) proj += std::conj(chi.values[s]) * sys.action[s];
    proj /= static_cast<double>(order);
    std::vector<ComplexMatrix> gens;
    for (int i = 0; i < d; ++i) {
      ComplexMatrix img = sys.algebra.from_coordinates(proj.col(i));
      if (hs_norm(img) > 1e-12) gens.push_back(std::move(img));  // drop projector noise
    }
    MatrixSubspace fiber = MatrixSubspace::from_span(sys.algebra.ambient_dim(), gens);
    covered += fiber.dim();
    fibers.push_back(std::move(fiber));
  }
  if (covered != d)
    throw std::logic_error("spectral_bundle: eigenspaces do not exhaust the algebra");
  auto bundle =
      std::make_shared<FellBundle>(dual, sys.algebra.ambient_dim(), std::move(fibers));
  return SpectralBundle{std::move(bundle), std::move(dual), std::move(chars)};
}

MatrixSubspace crossed_product_algebra(const DynamicalBundle& db) {
  std::vector<ComplexMatrix> gens;
  const auto& b = *db.bundle();
  for (int s = 0; s < b.group().order(); ++s)
    for (const auto& x : b.fiber(s).basis()) gens.push_back(x);
  MatrixSubspace span = MatrixSubspace::from_span(b.ambient_dim(), gens);
  // The fibers are independent here (disjoint block supports), so the span
  // is already the *-algebra generated by them.
  if (span.dim() != b.total_fiber_dim())
    throw std::logic_error("crossed_product_algebra: fibers are not independent");
  if (!is_product_closed(span) || !is_adjoint_closed(span))
    throw std::logic_error("crossed_product_algebra: span is not a *-algebra");
  return span;
}

bool takai_check(const DynamicalSystem& sys, std::uint64_t seed) {
  DynamicalBundle db = dynamical_bundle(sys);
  MatrixSubspace crossed = crossed_product_algebra(db);

  auto chars = dual_group(sys.group, seed);
  FiniteGroup ghat = dual_group_as_group(sys.group, chars);
  const int m = sys.algebra.ambient_dim();
  const int order = sys.group.order();

  // Dual action: (s, a) scales by chi(s); implemented by conjugation with
  // 1 ⊗ diag(chi).
  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(chars.size());
  for (const auto& chi : chars) {
    ComplexMatrix d = ComplexMatrix::Zero(m * order, m * order);
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < order; ++t) d(i * order + t, i * order + t) = chi.values[t];
    unitaries.push_back(std::move(d));
  }
  DynamicalSystem dual_sys = conjugation_system(crossed, ghat, unitaries);
  DynamicalBundle dd = dynamical_bundle(dual_sys);
  MatrixSubspace double_crossed = crossed_product_algebra(dd);
  auto dec_double = block_decompose(double_crossed, seed);

  // Independent side: A ⊗ M_|G| inside M_{m|G|}.
  std::vector<ComplexMatrix> gens;
  for (const auto& a : sys.algebra.basis())
    for (int t = 0; t < order; ++t)
      for (int u = 0; u < order; ++u) {
        ComplexMatrix e = ComplexMatrix::Zero(order, order);
        e(t, u) = 1.0;
        gens.push_back(kron(a, e));
      }
  MatrixSubspace stabilized = MatrixSubspace::from_span(m * order, gens);
  auto dec_oracle = block_decompose(stabilized, seed);

  return dec_double.sizes_with_multiplicity() == dec_oracle.sizes_with_multiplicity();
}

}  // namespace fellb
