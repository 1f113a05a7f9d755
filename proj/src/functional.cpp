#include "fellb/functional.hpp"

#include "fellb/families.hpp"
#include "fellb/matrix.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace fellb {

namespace {

// Flattened (element, fiber basis index) indexing of the section algebra.
std::vector<std::pair<int, int>> flat_fiber_index(const FellBundle& b) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < b.group().order(); ++s)
    for (int i = 0; i < b.fiber(s).dim(); ++i) out.emplace_back(s, i);
  return out;
}

}  // namespace

Functional::Functional(BundlePtr bundle, std::vector<ComplexMatrix> components)
    : bundle_(std::move(bundle)), components_(std::move(components)) {
  if (!bundle_) throw std::invalid_argument("Functional: null bundle");
  const int order = bundle_->group().order();
  if (static_cast<int>(components_.size()) != order)
    throw std::invalid_argument("Functional: one component per group element required");
  for (int s = 0; s < order; ++s) components_[s] = bundle_->fiber(s).project(components_[s]);
}

Functional Functional::zero(BundlePtr bundle) {
  const int n = bundle->ambient_dim();
  std::vector<ComplexMatrix> comps(bundle->group().order(), ComplexMatrix::Zero(n, n));
  return Functional(std::move(bundle), std::move(comps));
}

std::vector<int> Functional::support(double tolerance) const {
  std::vector<int> out;
  for (int s = 0; s < bundle_->group().order(); ++s)
    if (hs_norm(components_[s]) > tolerance) out.push_back(s);
  return out;
}

Functional& Functional::operator+=(const Functional& other) {
  if (bundle_ != other.bundle_) throw std::invalid_argument("Functional: bundle mismatch");
  for (std::size_t s = 0; s < components_.size(); ++s) components_[s] += other.components_[s];
  return *this;
}

Functional& Functional::operator*=(Complex c) {
  // phi -> c phi means F -> conj(c) F under the trace pairing
  for (auto& f : components_) f *= std::conj(c);
  return *this;
}

Functional operator-(const Functional& a, const Functional& b) {
  Functional out = a;
  return out += Complex(-1.0) * b;
}

Complex pair(const Functional& phi, const Section& f) {
  if (phi.bundle() != f.bundle()) throw std::invalid_argument("pair: bundle mismatch");
  Complex acc = 0.0;
  for (int s = 0; s < phi.bundle()->group().order(); ++s) acc += phi.apply(s, f.value(s));
  return acc;
}

Functional from_representation(const BundleRep& rep, const ComplexVector& xi,
                               const ComplexVector& eta) {
  if (xi.size() != rep.dim || eta.size() != rep.dim)
    throw std::invalid_argument("from_representation: vector dimension mismatch");
  const auto& b = *rep.bundle;
  const int n = b.ambient_dim();
  std::vector<ComplexMatrix> comps(b.group().order(), ComplexMatrix::Zero(n, n));
  for (int s = 0; s < b.group().order(); ++s)
    for (int i = 0; i < b.fiber(s).dim(); ++i) {
      Complex v = (eta.adjoint() * (rep.ops[s][i] * xi))(0, 0);
      comps[s] += std::conj(v) * b.fiber(s).basis()[i];
    }
  return Functional(rep.bundle, std::move(comps));
}

Functional random_functional(BundlePtr bundle, Rng& rng) {
  std::vector<ComplexMatrix> comps;
  comps.reserve(bundle->group().order());
  for (int s = 0; s < bundle->group().order(); ++s) {
    ComplexMatrix f = ComplexMatrix::Zero(bundle->ambient_dim(), bundle->ambient_dim());
    for (const auto& b : bundle->fiber(s).basis()) f += rng.cgauss() * b;
    comps.push_back(std::move(f));
  }
  return Functional(std::move(bundle), std::move(comps));
}

ComplexVector functional_on_algebra(const Functional& phi, const CStarPresentation& pres) {
  if (phi.bundle() != pres.bundle_ptr())
    throw std::invalid_argument("functional_on_algebra: bundle mismatch");
  const auto& sections = pres.basis_sections();
  ComplexVector tau(static_cast<Eigen::Index>(sections.size()));
  for (std::size_t k = 0; k < sections.size(); ++k)
    tau(static_cast<Eigen::Index>(k)) = pair(phi, sections[k]);
  return tau;
}

Functional functional_from_components(const CStarPresentation& pres,
                                      const std::vector<ComplexMatrix>& comps) {
  ComplexVector tau = pres.dual().tau_from_components(comps);
  const auto& bundle = *pres.bundle_ptr();
  const int n = bundle.ambient_dim();
  std::vector<ComplexMatrix> fiber_comps(bundle.group().order(), ComplexMatrix::Zero(n, n));
  for (int s = 0; s < bundle.group().order(); ++s)
    for (int i = 0; i < bundle.fiber(s).dim(); ++i) {
      ComplexMatrix img = pres.rep().matrix(s, bundle.fiber(s).basis()[i]);
      Complex value = (pres.algebra().coordinates(img).transpose() * tau)(0, 0);
      fiber_comps[s] += std::conj(value) * bundle.fiber(s).basis()[i];
    }
  return Functional(pres.bundle_ptr(), std::move(fiber_comps));
}

double bnorm(const Functional& phi, const CStarPresentation& pres) {
  return pres.dual().dual_norm(functional_on_algebra(phi, pres));
}

Section optimal_pairing_section(const Functional& phi, const CStarPresentation& pres) {
  auto comps = pres.dual().components(functional_on_algebra(phi, pres));
  return pres.section_of(pres.dual().polar_optimal(comps));
}

ComplexMatrix gns_gram(const Functional& phi) {
  const auto& b = *phi.bundle();
  const auto& g = b.group();
  auto flat = flat_fiber_index(b);
  const int d = static_cast<int>(flat.size());
  ComplexMatrix gram(d, d);
  for (int row = 0; row < d; ++row) {
    auto [t, j] = flat[row];
    for (int col = 0; col < d; ++col) {
      auto [s, i] = flat[col];
      // <j_s(b_i), j_t(b_j)> = phi_{t^{-1} s}(b_j† b_i)
      gram(row, col) =
          phi.apply(g.mul(g.inv(t), s), b.fiber(t).basis()[j].adjoint() * b.fiber(s).basis()[i]);
    }
  }
  return gram;
}

Positivity classify_positive_definite(const Functional& phi, double tolerance) {
  ComplexMatrix gram = gns_gram(phi);
  if (gram.size() == 0) return Positivity::positive;
  const double scale = tolerance * (1.0 + operator_norm(gram));
  if (operator_norm(gram - gram.adjoint()) > scale) return Positivity::negative;
  const double min_eig = hermitian_eigenvalues(gram)(0);
  if (min_eig >= -scale) return Positivity::positive;
  if (min_eig <= -10.0 * scale) return Positivity::negative;
  return Positivity::indeterminate;
}

bool is_positive_definite(const Functional& phi, double tolerance) {
  return classify_positive_definite(phi, tolerance) == Positivity::positive;
}

GnsData gns(const Functional& phi) {
  if (classify_positive_definite(phi) != Positivity::positive)
    throw std::invalid_argument("gns: functional is not positive definite");
  const auto& bundle = phi.bundle();
  const auto& b = *bundle;
  const auto& g = b.group();
  auto flat = flat_fiber_index(b);
  const int d = static_cast<int>(flat.size());

  ComplexMatrix gram = 0.5 * (gns_gram(phi) + gns_gram(phi).adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const RealVector& ev = es.eigenvalues();
  const double cut = ev.size() ? std::max(0.0, tol::rank_rel * ev(ev.size() - 1)) : 0.0;
  std::vector<int> kept;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) kept.push_back(i);
  const int dim = static_cast<int>(kept.size());

  ComplexMatrix w(dim, d), wplus(d, dim);
  for (int r = 0; r < dim; ++r) {
    double root = std::sqrt(ev(kept[r]));
    w.row(r) = root * es.eigenvectors().col(kept[r]).adjoint();
    wplus.col(r) = es.eigenvectors().col(kept[r]) / root;
  }

  // Left multiplication on coordinates: j_s(b_i) * j_t(b_j) = j_st(b_i b_j).
  auto left_mult = [&](int s, int i) {
    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
      auto [t, j] = flat[col];
      int st = g.mul(s, t);
      ComplexVector c = b.fiber(st).coordinates(b.fiber(s).basis()[i] * b.fiber(t).basis()[j]);
      for (int k = 0; k < d; ++k)
        if (flat[k].first == st) l(k, col) = c(flat[k].second);
    }
    return l;
  };

  GnsData out;
  out.dim = dim;
  out.rep.bundle = bundle;
  out.rep.dim = dim;
  out.rep.ops.resize(g.order());
  for (int k = 0; k < d; ++k) {
    auto [s, i] = flat[k];
    out.rep.ops[s].push_back(w * left_mult(s, i) * wplus);
  }
  for (int s = 0; s < g.order(); ++s)
    if (b.fiber(s).dim() == 0) out.rep.ops[s].clear();

  // Cyclic vector: class of j_e(1).
  if (b.unit().size() == 0) throw std::invalid_argument("gns: unit fiber has no unit");
  ComplexVector unit_coords = ComplexVector::Zero(d);
  ComplexVector ue = b.fiber(g.identity()).coordinates(b.unit());
  for (int k = 0; k < d; ++k)
    if (flat[k].first == g.identity()) unit_coords(k) = ue(flat[k].second);
  out.eta = w * unit_coords;

  double worst = dim == 0 ? 0.0 : out.rep.representation_residual();
  for (int k = 0; k < d; ++k) {
    auto [s, i] = flat[k];
    Complex recovered =
        dim == 0 ? Complex(0.0) : (out.eta.adjoint() * (out.rep.ops[s][i] * out.eta))(0, 0);
    worst = std::max(worst, std::abs(recovered - phi.apply(s, b.fiber(s).basis()[i])));
  }
  out.residual = worst;
  return out;
}

ComplexMatrix apply_section(const BundleRep& rep, const Section& f) {
  ComplexMatrix out = ComplexMatrix::Zero(rep.dim, rep.dim);
  for (int s = 0; s < rep.bundle->group().order(); ++s)
    if (rep.bundle->fiber(s).dim() > 0) out += rep.apply(s, f.value(s));
  return out;
}

std::pair<double, double> check_eta_norm(const Functional& phi, const CStarPresentation& pres) {
  double n = bnorm(phi, pres);
  GnsData data = gns(phi);
  double eta2 = data.eta.squaredNorm();
  return {n, eta2};
}

std::array<Functional, 4> jordan_decompose(const Functional& phi, const CStarPresentation& pres) {
  auto comps = pres.dual().components(functional_on_algebra(phi, pres));
  const int m = static_cast<int>(comps.size());
  std::array<std::vector<ComplexMatrix>, 4> parts;
  for (auto& p : parts) p.resize(m);
  for (int i = 0; i < m; ++i) {
    ComplexMatrix h = 0.5 * (comps[i] + comps[i].adjoint());
    ComplexMatrix k = (comps[i] - comps[i].adjoint()) / Complex(0.0, 2.0);
    for (int which = 0; which < 2; ++which) {
      const ComplexMatrix& x = which == 0 ? h : k;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
      RealVector pos = es.eigenvalues().cwiseMax(0.0);
      RealVector neg = (-es.eigenvalues()).cwiseMax(0.0);
      parts[2 * which][i] = es.eigenvectors() * pos.asDiagonal() * es.eigenvectors().adjoint();
      parts[2 * which + 1][i] = es.eigenvectors() * neg.asDiagonal() * es.eigenvectors().adjoint();
    }
  }
  return {functional_from_components(pres, parts[0]), functional_from_components(pres, parts[1]),
          functional_from_components(pres, parts[2]), functional_from_components(pres, parts[3])};
}

PolarFactorization polar_factorization(const Functional& phi, const CStarPresentation& pres) {
  auto comps = pres.dual().components(functional_on_algebra(phi, pres));
  const int m = static_cast<int>(comps.size());

  // Right polar per summand: F = U P so that phi(a) = |phi|(a U).
  std::vector<ComplexMatrix> abs_comps(m), u_blocks(m);
  for (int i = 0; i < m; ++i) {
    Eigen::JacobiSVD<ComplexMatrix> svd(comps[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
    abs_comps[i] = svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().adjoint();
    u_blocks[i] = svd.matrixU() * svd.matrixV().adjoint();
  }
  Functional abs_phi = functional_from_components(pres, abs_comps);

  PolarFactorization out;
  out.norm = BlockDualContext::dual_norm_of(comps);
  out.gns = gns(abs_phi);
  out.eta = out.gns.eta;
  Section u_section = pres.section_of(pres.dual().element_from_blocks(u_blocks));
  out.xi = out.gns.dim == 0 ? ComplexVector::Zero(0)
                            : (apply_section(out.gns.rep, u_section) * out.eta).eval();
  out.product = out.xi.norm() * out.eta.norm();
  return out;
}

double sampled_factorization_minimum(const PolarFactorization& pf, int samples,
                                     std::uint64_t seed) {
  Rng rng(seed);
  const int h = pf.gns.dim;
  double best = pf.product;
  if (h == 0) return best;

  // Commutant of the GNS representation.
  std::vector<ComplexMatrix> ops;
  for (const auto& per_fiber : pf.gns.rep.ops)
    for (const auto& op : per_fiber) ops.push_back(op);
  std::vector<ComplexMatrix> comm = matrix_commutant(ops, h);

  for (int trial = 0; trial < samples; ++trial) {
    if (trial % 2 == 0 && !comm.empty()) {
      // Twist by an invertible commutant element.
      ComplexMatrix x = ComplexMatrix::Identity(h, h);
      for (const auto& c : comm) x += 0.35 * rng.cgauss() * c;
      Eigen::JacobiSVD<ComplexMatrix> svd(x);
      if (svd.singularValues()(svd.singularValues().size() - 1) < 1e-3) continue;
      ComplexVector xi = x * pf.xi;
      ComplexVector eta = x.adjoint().inverse() * pf.eta;
      best = std::min(best, xi.norm() * eta.norm());
    } else {
      // Amplification: pad the representation and perturb the right leg.
      ComplexVector w = 0.5 * random_vector(rng, h);
      double eta_big = std::sqrt(pf.eta.squaredNorm() + w.squaredNorm());
      best = std::min(best, pf.xi.norm() * eta_big);
    }
  }
  return best;
}

Functional bg_module_action(const ClassicalFunction& u, const Functional& phi) {
  if (!u.group.same_table(phi.bundle()->group()))
    throw std::invalid_argument("bg_module_action: group mismatch");
  std::vector<ComplexMatrix> comps;
  comps.reserve(phi.components().size());
  for (int s = 0; s < phi.bundle()->group().order(); ++s)
    comps.push_back(std::conj(u(s)) * phi.component(s));
  return Functional(phi.bundle(), std::move(comps));
}

Comultiplication::Comultiplication(Kind k, DynamicalBundle db, std::vector<ComplexMatrix> delta)
    : kind_(k), db_(std::move(db)), delta_(std::move(delta)) {}

Comultiplication Comultiplication::dynamical(DynamicalBundle db) {
  return Comultiplication(Kind::dynamical, std::move(db), {});
}

Comultiplication Comultiplication::hopf(DynamicalBundle db, std::vector<ComplexMatrix> delta) {
  const int d = db.algebra_dim();
  if (static_cast<int>(delta.size()) != d)
    throw std::invalid_argument("Comultiplication: one tensor per algebra basis element");
  for (const auto& t : delta)
    if (t.rows() != d || t.cols() != d)
      throw std::invalid_argument("Comultiplication: tensor shape mismatch");
  Comultiplication out(Kind::hopf, std::move(db), std::move(delta));
  if (out.coassociativity_residual() > 1e-10)
    throw std::invalid_argument("Comultiplication: family is not co-associative");

  // The action must commute with the comultiplication for the induced
  // product to close on coefficients.
  const auto& sys = out.db_.system();
  double worst = 0.0;
  for (int s = 0; s < sys.group.order(); ++s) {
    const ComplexMatrix& act = sys.action[s];
    for (int k = 0; k < d; ++k) {
      ComplexMatrix lhs = ComplexMatrix::Zero(d, d);
      for (int q = 0; q < d; ++q) lhs += act(q, k) * out.delta_[q];
      ComplexMatrix rhs = act * out.delta_[k] * act.transpose();
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  if (worst > 1e-10)
    throw std::invalid_argument("Comultiplication: action does not commute with the family");
  return out;
}

double Comultiplication::coassociativity_residual() const {
  if (kind_ == Kind::dynamical) return 0.0;  // (r,1)⊗(s,1)⊗(t,a) on both paths, structurally
  const int d = static_cast<int>(delta_.size());
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int p = 0; p < d; ++p) {
          Complex lhs = 0.0, rhs = 0.0;
          for (int q = 0; q < d; ++q) {
            lhs += delta_[k](q, p) * delta_[q](l, m);  // (Delta ⊗ id) Delta
            rhs += delta_[k](l, q) * delta_[q](m, p);  // (id ⊗ Delta) Delta
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

Comultiplication hopf_c2_comultiplication() {
  DynamicalBundle db = hopf_c2_bundle();
  // Basis of C*(Z2) in M2 is {I, swap}/sqrt(2) after orthonormalization; the
  // coproduct u -> u ⊗ u must be expressed in the stored basis.
  const auto& a = db.system().algebra;
  const int d = a.dim();
  ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix sw = ComplexMatrix::Zero(2, 2);
  sw(0, 1) = 1.0;
  sw(1, 0) = 1.0;
  // group unitaries in coordinates
  ComplexVector ci = a.coordinates(id2), cs = a.coordinates(sw);
  ComplexMatrix to_units(d, 2);
  to_units.col(0) = ci;
  to_units.col(1) = cs;
  ComplexMatrix from_units = to_units.inverse();
  std::vector<ComplexMatrix> delta(d, ComplexMatrix::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int u = 0; u < 2; ++u) {
      // basis_k = sum_u from_units(u,k) * unit_u; Delta(unit_u) = unit_u ⊗ unit_u
      Complex c = from_units(u, k);
      delta[k] += c * (to_units.col(u) * to_units.col(u).transpose());
    }
  return Comultiplication::hopf(std::move(db), std::move(delta));
}

Functional multiply(const Functional& phi, const Functional& psi, const Comultiplication& delta) {
  const auto& db = delta.carrier();
  if (phi.bundle() != db.bundle() || psi.bundle() != db.bundle())
    throw std::invalid_argument("multiply: functionals do not live over the carrier bundle");
  const auto& b = *db.bundle();
  const int n = b.ambient_dim();
  std::vector<ComplexMatrix> comps(b.group().order(), ComplexMatrix::Zero(n, n));

  if (delta.kind() == Comultiplication::Kind::dynamical) {
    for (int s = 0; s < b.group().order(); ++s) {
      Complex c = phi.apply(s, db.unit_element(s));
      comps[s] = std::conj(c) * psi.component(s);
    }
    return Functional(db.bundle(), std::move(comps));
  }

  const auto& a = db.system().algebra;
  const int d = a.dim();
  for (int s = 0; s < b.group().order(); ++s) {
    ComplexVector pphi(d), ppsi(d);
    for (int l = 0; l < d; ++l) {
      ComplexMatrix el = db.insert(s, a.basis()[l]);
      pphi(l) = phi.apply(s, el);
      ppsi(l) = psi.apply(s, el);
    }
    for (int i = 0; i < b.fiber(s).dim(); ++i) {
      ComplexVector coords = a.coordinates(db.algebra_part(s, b.fiber(s).basis()[i]));
      Complex value = 0.0;
      for (int k = 0; k < d; ++k) value += coords(k) * (pphi.transpose() * delta.hopf_delta()[k] * ppsi)(0, 0);
      comps[s] += std::conj(value) * b.fiber(s).basis()[i];
    }
  }
  return Functional(db.bundle(), std::move(comps));
}

Functional unit_like_functional(const DynamicalBundle& db) {
  const auto& b = *db.bundle();
  std::vector<ComplexMatrix> comps;
  comps.reserve(b.group().order());
  for (int s = 0; s < b.group().order(); ++s) {
    ComplexMatrix us = db.unit_element(s);
    comps.push_back(us / hs_inner(us, us).real());
  }
  return Functional(db.bundle(), std::move(comps));
}

Functional trivial_character_functional(const BundlePtr& trivial, const Character& chi) {
  const auto& g = trivial->group();
  std::vector<ComplexMatrix> comps;
  comps.reserve(g.order());
  for (int s = 0; s < g.order(); ++s)
    comps.push_back(std::conj(chi.values[s]) * left_regular_matrix(g, s) /
                    static_cast<double>(g.order()));
  return Functional(trivial, std::move(comps));
}

DualIsoReport dual_iso_check(const CStarPresentation& pres, int trials, std::uint64_t seed) {
  Rng rng(seed);
  DualIsoReport report;
  report.trials = trials;
  report.saturated = is_saturated(*pres.bundle_ptr());
  RegularRep rep(pres.bundle_ptr());
  for (int t = 0; t < trials; ++t) {
    Functional phi = random_functional(pres.bundle_ptr(), rng);
    double n = bnorm(phi, pres);
    double best = 0.0;
    // The analytically optimal direction, its norm recomputed independently
    // of the block data.
    Section opt = optimal_pairing_section(phi, pres);
    double opt_norm = universal_norm(rep, opt);
    if (opt_norm > 1e-12) best = std::max(best, std::abs(pair(phi, opt)) / opt_norm);
    report.worst_overshoot = std::max(report.worst_overshoot, best - n);
    // Random unit-ball samples must never exceed the block norm.
    for (int k = 0; k < 16; ++k) {
      Section f = random_section(pres.bundle_ptr(), rng);
      double fn = universal_norm(rep, f);
      if (fn < 1e-12) continue;
      double v = std::abs(pair(phi, f)) / fn;
      report.worst_overshoot = std::max(report.worst_overshoot, v - n);
      best = std::max(best, v);
    }
    report.worst_gap = std::max(report.worst_gap, n - best);
  }
  return report;
}

}  // namespace fellb
