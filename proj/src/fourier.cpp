#include "fellb/fourier.hpp"

#include "fellb/matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fellb {

Coefficient::Coefficient(Section xi, Section eta) : xi_(std::move(xi)), eta_(std::move(eta)) {
  require_same_bundle(xi_, eta_);
}

ComplexMatrix evaluate(const Coefficient& c, int s, const ComplexMatrix& b) {
  const auto& bundle = *c.bundle();
  const auto& g = bundle.group();
  if (!bundle.fiber(s).contains(b))
    throw std::invalid_argument("evaluate: argument is not in the fiber over element " +
                                std::to_string(s));
  const int n = bundle.ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int t = 0; t < g.order(); ++t)
    out += (b * c.xi().value(g.mul(g.inv(s), t))).adjoint() * c.eta().value(t);
  return out;
}

FourierElement::FourierElement(BundlePtr bundle, ArgLinearity lin,
                               std::vector<std::vector<ComplexMatrix>> basis_values, double upper)
    : bundle_(std::move(bundle)), lin_(lin), values_(std::move(basis_values)), upper_(upper) {
  if (static_cast<int>(values_.size()) != bundle_->group().order())
    throw std::invalid_argument("FourierElement: one value list per group element");
  for (int s = 0; s < bundle_->group().order(); ++s)
    if (static_cast<int>(values_[s].size()) != bundle_->fiber(s).dim())
      throw std::invalid_argument("FourierElement: one value per fiber basis element");
}

FourierElement FourierElement::of(const Coefficient& c) {
  const auto& bundle = *c.bundle();
  std::vector<std::vector<ComplexMatrix>> vals(bundle.group().order());
  for (int s = 0; s < bundle.group().order(); ++s)
    for (const auto& b : bundle.fiber(s).basis()) vals[s].push_back(evaluate(c, s, b));
  return FourierElement(c.bundle(), ArgLinearity::conjugate_linear, std::move(vals),
                        l2_norm(c.xi()) * l2_norm(c.eta()));
}

ComplexMatrix FourierElement::value(int s, const ComplexMatrix& b) const {
  const auto& fiber = bundle_->fiber(s);
  if (!fiber.contains(b))
    throw std::invalid_argument("FourierElement: argument is not in the fiber");
  ComplexVector coords = fiber.coordinates(b);
  const int n = bundle_->ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < fiber.dim(); ++i) {
    Complex c = lin_ == ArgLinearity::conjugate_linear ? std::conj(coords(i)) : coords(i);
    out += c * values_[s][i];
  }
  return out;
}

FourierElement& FourierElement::operator*=(Complex c) {
  for (auto& per_s : values_)
    for (auto& v : per_s) v *= (lin_ == ArgLinearity::conjugate_linear ? std::conj(c) : c);
  // either way the element scales by |c| in norm
  upper_ *= std::abs(c);
  return *this;
}

FourierElement operator-(const FourierElement& a, const FourierElement& b) {
  if (a.bundle_ != b.bundle_ || a.lin_ != b.lin_)
    throw std::invalid_argument("FourierElement: incompatible difference");
  FourierElement out = a;
  for (std::size_t s = 0; s < out.values_.size(); ++s)
    for (std::size_t i = 0; i < out.values_[s].size(); ++i) out.values_[s][i] -= b.values_[s][i];
  out.upper_ = a.upper_ + b.upper_;
  return out;
}

namespace {

// The scalarized functional f -> u† <w, f> v (made linear in f), whose exact
// dual norm is the best value of |u† <w,f> v| over the unit ball.
Functional scalarize(const FourierElement& w, const ComplexVector& u, const ComplexVector& v) {
  const auto& bundle = *w.bundle();
  const int n = bundle.ambient_dim();
  std::vector<ComplexMatrix> comps(bundle.group().order(), ComplexMatrix::Zero(n, n));
  for (int s = 0; s < bundle.group().order(); ++s)
    for (int i = 0; i < bundle.fiber(s).dim(); ++i) {
      Complex m = (u.adjoint() * (w.basis_value(s, i) * v))(0, 0);
      if (w.linearity() == FourierElement::ArgLinearity::conjugate_linear) m = std::conj(m);
      comps[s] += std::conj(m) * bundle.fiber(s).basis()[i];
    }
  return Functional(w.bundle(), std::move(comps));
}

ComplexMatrix pair_value(const FourierElement& w, const Section& f) {
  const int n = w.bundle()->ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int s = 0; s < w.bundle()->group().order(); ++s) out += w.value(s, f.value(s));
  return out;
}

}  // namespace

NormInterval anorm_bounds(const FourierElement& w, const CStarPresentation& pres, int budget,
                          std::uint64_t seed) {
  if (w.bundle() != pres.bundle_ptr()) throw std::invalid_argument("anorm_bounds: bundle mismatch");
  Rng rng(seed);
  const int n = w.bundle()->ambient_dim();
  NormInterval out;
  out.upper = w.upper_bound();
  const int starts = std::max(2, budget);
  for (int start = 0; start < starts; ++start) {
    ComplexVector u = random_unit_vector(rng, n);
    ComplexVector v = random_unit_vector(rng, n);
    double prev = -1.0;
    for (int iter = 0; iter < 25; ++iter) {
      Functional x = scalarize(w, u, v);
      double val = bnorm(x, pres);
      out.lower = std::max(out.lower, val);
      if (val < 1e-15) break;
      Section f = optimal_pairing_section(x, pres);
      ComplexMatrix attained = pair_value(w, f);
      Eigen::JacobiSVD<ComplexMatrix> svd(attained, Eigen::ComputeFullU | Eigen::ComputeFullV);
      out.lower = std::max(out.lower, svd.singularValues()(0));
      u = svd.matrixU().col(0);
      v = svd.matrixV().col(0);
      if (val - prev < 1e-13 * (1.0 + val)) break;
      prev = val;
    }
  }
  out.lower = std::min(out.lower, out.upper);  // guard rounding at collapse
  return out;
}

NormInterval anorm_bounds(const Coefficient& c, const CStarPresentation& pres, int budget,
                          std::uint64_t seed) {
  return anorm_bounds(FourierElement::of(c), pres, budget, seed);
}

VanishingReport vanishing_check(const Coefficient& c, int samples, std::uint64_t seed) {
  const auto& bundle = *c.bundle();
  const auto& g = bundle.group();
  Rng rng(seed);
  VanishingReport report;
  report.map_norms.resize(g.order(), 0.0);
  for (int s = 0; s < g.order(); ++s) {
    const auto& fiber = bundle.fiber(s);
    double norm = 0.0;
    for (const auto& b : fiber.basis()) {
      double bn = operator_norm(b);
      if (bn > 1e-14) norm = std::max(norm, operator_norm(evaluate(c, s, b)) / bn);
    }
    for (int k = 0; k < samples && fiber.dim() > 0; ++k) {
      ComplexMatrix b = fiber.random_element(rng);
      double bn = operator_norm(b);
      if (bn > 1e-14) norm = std::max(norm, operator_norm(evaluate(c, s, b)) / bn);
    }
    report.map_norms[s] = norm;
    if (norm > 1e-10) report.support.push_back(s);
  }
  std::set<int> predicted;
  for (int t : c.eta().support())
    for (int r : c.xi().support()) predicted.insert(g.mul(t, g.inv(r)));
  report.predicted_support.assign(predicted.begin(), predicted.end());
  for (int s : report.support)
    if (!predicted.count(s)) report.support_contained = false;
  return report;
}

Coefficient eymard_element(const DynamicalBundle& db, const std::vector<int>& k) {
  if (k.empty()) throw std::invalid_argument("eymard_element: K must be nonempty");
  const auto& g = db.bundle()->group();
  std::vector<int> kinv;
  kinv.reserve(k.size());
  for (int s : k) {
    if (s < 0 || s >= g.order()) throw std::invalid_argument("eymard_element: K element out of range");
    kinv.push_back(g.inv(s));
  }
  Section xi = indicator_section(db, kinv);
  Section eta = indicator_section(db, {g.identity()});
  return Coefficient(std::move(xi), std::move(eta));
}

Coefficient folner_approx_identity(const DynamicalBundle& db, const std::vector<int>& k,
                                   double eps) {
  const auto& g = db.bundle()->group();
  std::vector<int> c = folner_certificate(g, k, eps);
  std::set<int> kc;
  for (int a : k)
    for (int b : c) kc.insert(g.mul(a, b));
  Section xi = indicator_section(db, c);
  Section eta = indicator_section(db, std::vector<int>(kc.begin(), kc.end()));
  double scale = 1.0 / ((1.0 + eps) * static_cast<double>(c.size()));
  return Coefficient(std::move(xi), scale * std::move(eta));
}

FourierElement multiply(const Coefficient& u, const Coefficient& v, const Comultiplication& delta) {
  const auto& db = delta.carrier();
  if (u.bundle() != db.bundle() || v.bundle() != db.bundle())
    throw std::invalid_argument("multiply: coefficients do not live over the carrier bundle");
  const auto& bundle = *db.bundle();
  const auto& g = bundle.group();
  const int n = bundle.ambient_dim();

  std::vector<std::vector<ComplexMatrix>> vals(g.order());
  if (delta.kind() == Comultiplication::Kind::dynamical) {
    for (int s = 0; s < g.order(); ++s) {
      ComplexMatrix cs = evaluate(u, s, db.unit_element(s));
      for (const auto& b : bundle.fiber(s).basis()) {
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        for (int t = 0; t < g.order(); ++t)
          acc += (b * v.xi().value(g.mul(g.inv(s), t))).adjoint() * (cs * v.eta().value(t));
        vals[s].push_back(std::move(acc));
      }
    }
  } else {
    const auto& a = db.system().algebra;
    const int d = a.dim();
    for (int s = 0; s < g.order(); ++s) {
      std::vector<ComplexMatrix> cu(d), xv(d);
      for (int l = 0; l < d; ++l) {
        ComplexMatrix el = db.insert(s, a.basis()[l]);
        cu[l] = evaluate(u, s, el);
        xv[l] = el;
      }
      for (const auto& b : bundle.fiber(s).basis()) {
        ComplexVector coords = a.coordinates(db.algebra_part(s, b));
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        for (int kidx = 0; kidx < d; ++kidx) {
          if (std::abs(coords(kidx)) < 1e-15) continue;
          for (int l = 0; l < d; ++l)
            for (int m = 0; m < d; ++m) {
              // the evaluation is conjugate-linear, so the tensor expansion
              // weights of Delta(b (s,1)) enter conjugated
              Complex coeff = std::conj(coords(kidx) * delta.hopf_delta()[kidx](l, m));
              if (std::abs(coeff) < 1e-15) continue;
              ComplexMatrix term = ComplexMatrix::Zero(n, n);
              for (int t = 0; t < g.order(); ++t)
                term += (xv[m] * v.xi().value(g.mul(g.inv(s), t))).adjoint() *
                        (cu[l] * v.eta().value(t));
              acc += coeff * term;
            }
        }
        vals[s].push_back(std::move(acc));
      }
    }
  }
  double upper = l2_norm(u.xi()) * l2_norm(u.eta()) * l2_norm(v.xi()) * l2_norm(v.eta());
  return FourierElement(db.bundle(), FourierElement::ArgLinearity::conjugate_linear,
                        std::move(vals), upper);
}

double approx_identity_defect(const Coefficient& u, const Coefficient& v,
                              const std::vector<int>& k, const Comultiplication& delta,
                              const CStarPresentation& pres, int budget, std::uint64_t seed) {
  // v must be supported in K
  auto report = vanishing_check(v);
  std::set<int> kset(k.begin(), k.end());
  for (int s : report.support)
    if (!kset.count(s))
      throw std::invalid_argument("approx_identity_defect: v is not supported in K");

  FourierElement uv = multiply(u, v, delta);
  FourierElement wv = FourierElement::of(v);
  NormInterval denom = anorm_bounds(wv, pres, budget, seed);
  if (denom.lower < 1e-14) throw std::invalid_argument("approx_identity_defect: v vanishes");
  NormInterval num = anorm_bounds(uv - wv, pres, budget, seed);
  return num.lower / denom.lower;
}

FourierElement multiplier_action(const Functional& phi, const Coefficient& c,
                                 const Comultiplication& delta, const CStarPresentation& pres) {
  const auto& db = delta.carrier();
  if (phi.bundle() != db.bundle() || c.bundle() != db.bundle())
    throw std::invalid_argument("multiplier_action: bundle mismatch");
  if (delta.kind() != Comultiplication::Kind::dynamical)
    throw std::invalid_argument("multiplier_action: implemented for the dynamical family");
  const auto& bundle = *db.bundle();
  std::vector<std::vector<ComplexMatrix>> vals(bundle.group().order());
  for (int s = 0; s < bundle.group().order(); ++s) {
    Complex scale = phi.apply(s, db.unit_element(s));
    for (const auto& b : bundle.fiber(s).basis()) vals[s].push_back(scale * evaluate(c, s, b));
  }
  double upper = bnorm(phi, pres) * l2_norm(c.xi()) * l2_norm(c.eta());
  return FourierElement(db.bundle(), FourierElement::ArgLinearity::conjugate_linear,
                        std::move(vals), upper);
}

Coefficient star(const Coefficient& c) { return Coefficient(c.eta(), c.xi()); }

FourierElement ag_module_action(const ClassicalFunction& u, const Coefficient& c) {
  if (!u.group.same_table(c.bundle()->group()))
    throw std::invalid_argument("ag_module_action: group mismatch");
  const auto& bundle = *c.bundle();
  std::vector<std::vector<ComplexMatrix>> vals(bundle.group().order());
  for (int s = 0; s < bundle.group().order(); ++s)
    for (const auto& b : bundle.fiber(s).basis()) vals[s].push_back(u(s) * evaluate(c, s, b));
  return FourierElement(c.bundle(), FourierElement::ArgLinearity::conjugate_linear,
                        std::move(vals));
}

UnitFiberState normalized_trace_state(const DynamicalBundle& db) {
  const auto& b = *db.bundle();
  ComplexMatrix unit = b.unit();
  return UnitFiberState{db.bundle(), unit / unit.trace().real()};
}

FourierElement t_forward(const Functional& phi, const DynamicalBundle& db) {
  if (phi.bundle() != db.bundle()) throw std::invalid_argument("t_forward: bundle mismatch");
  const auto& bundle = *db.bundle();
  std::vector<int> support = phi.support();
  std::vector<std::vector<ComplexMatrix>> vals(bundle.group().order());
  const int n = bundle.ambient_dim();
  if (support.empty()) {
    for (int s = 0; s < bundle.group().order(); ++s)
      vals[s].assign(bundle.fiber(s).dim(), ComplexMatrix::Zero(n, n));
    return FourierElement(db.bundle(), FourierElement::ArgLinearity::linear, std::move(vals), 0.0);
  }
  Coefficient u = eymard_element(db, support);
  for (int s = 0; s < bundle.group().order(); ++s) {
    ComplexMatrix front = evaluate(u, s, db.unit_element(s));
    for (const auto& b : bundle.fiber(s).basis())
      vals[s].push_back(front * phi.apply(s, b));
  }
  return FourierElement(db.bundle(), FourierElement::ArgLinearity::linear, std::move(vals));
}

Functional t_psi(const FourierElement& w, const UnitFiberState& psi) {
  if (w.bundle() != psi.bundle) throw std::invalid_argument("t_psi: bundle mismatch");
  const auto& bundle = *w.bundle();
  const int n = bundle.ambient_dim();
  std::vector<ComplexMatrix> comps(bundle.group().order(), ComplexMatrix::Zero(n, n));
  for (int s = 0; s < bundle.group().order(); ++s)
    for (int i = 0; i < bundle.fiber(s).dim(); ++i) {
      // composing with the B_e adjoint restores linearity for coefficients
      Complex value = w.linearity() == FourierElement::ArgLinearity::conjugate_linear
                          ? psi.apply(w.basis_value(s, i).adjoint())
                          : psi.apply(w.basis_value(s, i));
      comps[s] += std::conj(value) * bundle.fiber(s).basis()[i];
    }
  return Functional(w.bundle(), std::move(comps));
}

}  // namespace fellb
