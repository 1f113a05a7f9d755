#include "doctest.h"
#include "fellb/families.hpp"
#include "fellb/fourier.hpp"
#include "fellb/matrix.hpp"

#include <set>

using namespace fellb;

namespace {

std::vector<std::vector<int>> nonempty_subsets(int order) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << order); ++mask) {
    std::vector<int> subset;
    for (int s = 0; s < order; ++s)
      if (mask & (1 << s)) subset.push_back(s);
    out.push_back(std::move(subset));
  }
  return out;
}

}  // namespace

TEST_CASE("evaluation of coefficients") {
  auto b = trivial_bundle(cyclic(2));
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  Coefficient c(je, je);
  CHECK((evaluate(c, 0, ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(2, 2)).norm() <
        1e-13);
  CHECK(evaluate(c, 1, left_regular_matrix(cyclic(2), 1)).norm() < 1e-13);

  // single-fiber vectors: evaluate(s, b) = (b c)† d for xi = j_t(c), eta = j_st(d)
  auto db = m2_inner_bundle();
  auto mb = db.bundle();
  Rng rng(3);
  const auto& g = mb->group();
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      ComplexMatrix cm = db.insert(t, db.system().algebra.random_element(rng));
      ComplexMatrix dm = db.insert(g.mul(s, t), db.system().algebra.random_element(rng));
      ComplexMatrix bm = db.insert(s, db.system().algebra.random_element(rng));
      Coefficient single(j_embed(mb, t, cm), j_embed(mb, g.mul(s, t), dm));
      ComplexMatrix expect = (bm * cm).adjoint() * dm;
      CHECK((evaluate(single, s, bm) - expect).norm() < 1e-12 * (1.0 + expect.norm()));
    }

  // values land in the unit fiber for every bundle family
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 6) continue;
    INFO(nb.name);
    Rng r2(7);
    Coefficient c2(random_section(nb.bundle, r2), random_section(nb.bundle, r2));
    for (int s = 0; s < nb.bundle->group().order(); ++s) {
      if (nb.bundle->fiber(s).dim() == 0) continue;
      ComplexMatrix val = evaluate(c2, s, nb.bundle->fiber(s).random_element(r2));
      CHECK(nb.bundle->fiber(0).membership_residual(val) < 1e-10 * (1.0 + val.norm()));
    }
  }
}

TEST_CASE("norm interval collapses on the trivial bundle") {
  for (const char* name : {"c2", "c4"}) {
    auto b = trivial_bundle(named_group(name));
    CStarPresentation pres(b);
    Rng rng(11);
    for (int trial = 0; trial < 8; ++trial) {
      Coefficient c(random_section(b, rng), random_section(b, rng));
      auto interval = anorm_bounds(c, pres, 4, 17 + trial);
      double classical = ag_norm(tb_isomorphism(c));
      CHECK(interval.lower == doctest::Approx(classical).epsilon(1e-6));
      CHECK(interval.upper >= classical - 1e-9);
      CHECK(interval.lower <= interval.upper + 1e-12);
    }
  }

  // xi = eta = j_e(1): both bounds equal one
  auto b = trivial_bundle(cyclic(2));
  CStarPresentation pres(b);
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  auto iv = anorm_bounds(Coefficient(je, je), pres, 3, 5);
  CHECK(iv.lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(iv.upper == doctest::Approx(1.0).epsilon(1e-10));

  // zero coefficient
  auto zero = anorm_bounds(Coefficient(Section::zero(b), je), pres, 2, 5);
  CHECK(zero.lower == doctest::Approx(0.0));
  CHECK(zero.upper == doctest::Approx(0.0));
}

TEST_CASE("vanishing and supports") {
  auto db = diag2_swap_bundle();
  auto b = db.bundle();
  Rng rng(13);
  const auto& g = b->group();

  // single-fiber supports: supp ⊆ {r t^{-1}}
  for (int t = 0; t < 2; ++t)
    for (int r = 0; r < 2; ++r) {
      ComplexMatrix cm = db.insert(t, db.system().algebra.random_element(rng));
      ComplexMatrix dm = db.insert(r, db.system().algebra.random_element(rng));
      auto report = vanishing_check(Coefficient(j_embed(b, t, cm), j_embed(b, r, dm)));
      CHECK(report.support_contained);
      for (int s : report.support) CHECK(s == g.mul(r, g.inv(t)));
    }

  // random supported pairs on S3: support stays inside supp(eta) supp(xi)^{-1}
  auto db3 = s3_sign_bundle();
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<int> ks{0, trial % 6}, ls{(trial + 2) % 6};
    Section xi = random_section_supported(db3.bundle(), ks, rng);
    Section eta = random_section_supported(db3.bundle(), ls, rng);
    auto report = vanishing_check(Coefficient(xi, eta));
    CHECK(report.support_contained);
  }
}

TEST_CASE("eymard elements are exact for every subset") {
  for (auto db : {diag2_swap_bundle(), m2_inner_bundle()}) {
    const auto& b = *db.bundle();
    const auto& g = b.group();
    const auto& alg = db.system().algebra;
    for (const auto& k : nonempty_subsets(g.order())) {
      Coefficient u = eymard_element(db, k);
      std::set<int> kset(k.begin(), k.end());
      for (int s = 0; s < g.order(); ++s)
        for (const auto& a : alg.basis()) {
          ComplexMatrix val = evaluate(u, s, db.insert(s, a));
          ComplexMatrix expect = kset.count(s)
                                     ? db.insert(g.identity(), a.adjoint())
                                     : ComplexMatrix::Zero(b.ambient_dim(), b.ambient_dim());
          CHECK((val - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
        }
    }
  }
  CHECK_THROWS_AS(eymard_element(diag2_swap_bundle(), {}), std::invalid_argument);
}

TEST_CASE("folner elements: norm bound and defect ratio") {
  auto db = diag2_swap_bundle();
  CStarPresentation pres(db.bundle());
  auto delta = Comultiplication::dynamical(db);
  const auto& g = db.bundle()->group();
  std::vector<int> full{0, 1};

  for (double eps : {1e-3, 0.1, 0.5, 1.0, 10.0}) {
    Coefficient u = folner_approx_identity(db, full, eps);
    double upper = l2_norm(u.xi()) * l2_norm(u.eta());
    CHECK(upper <= 1.0 + 1e-12);
    // with C = G the bound is exactly 1/(1+eps)
    CHECK(upper == doctest::Approx(1.0 / (1.0 + eps)).epsilon(1e-10));

    Rng rng(37);
    for (int trial = 0; trial < 5; ++trial) {
      Section xi = random_section_supported(db.bundle(), {g.identity()}, rng);
      Section eta = random_section_supported(db.bundle(), full, rng);
      Coefficient v(xi, eta);
      double ratio = approx_identity_defect(u, v, full, delta, pres, 3, 53 + trial);
      CHECK(ratio == doctest::Approx(eps / (1.0 + eps)).epsilon(1e-8));
    }
  }

  // K = G, eps = 0.5 on the trivial Z2 bundle: upper bound 2/3
  auto tdb = trivial_dynamical_bundle(cyclic(2));
  Coefficient ut = folner_approx_identity(tdb, {0, 1}, 0.5);
  CHECK(l2_norm(ut.xi()) * l2_norm(ut.eta()) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("multiplier action") {
  auto db = diag2_swap_bundle();
  CStarPresentation pres(db.bundle());
  auto delta = Comultiplication::dynamical(db);
  Rng rng(41);

  // the unit-like functional acts as the identity
  Functional unit = unit_like_functional(db);
  Coefficient c(random_section(db.bundle(), rng), random_section(db.bundle(), rng));
  FourierElement act = multiplier_action(unit, c, delta, pres);
  FourierElement plain = FourierElement::of(c);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < db.bundle()->fiber(s).dim(); ++i)
      CHECK((act.basis_value(s, i) - plain.basis_value(s, i)).norm() < 1e-12);

  // boundedness: lower(phi·c) <= bnorm(phi) * upper(c)
  for (int trial = 0; trial < 10; ++trial) {
    Functional phi = random_functional(db.bundle(), rng);
    Coefficient cc(random_section(db.bundle(), rng), random_section(db.bundle(), rng));
    FourierElement out = multiplier_action(phi, cc, delta, pres);
    auto iv = anorm_bounds(out, pres, 3, 71 + trial);
    double cupper = l2_norm(cc.xi()) * l2_norm(cc.eta());
    CHECK(iv.lower <= bnorm(phi, pres) * cupper + 1e-8);
  }

  // on the trivial bundle the action is pointwise B(G)·A(G) multiplication
  auto tdb = trivial_dynamical_bundle(cyclic(2));
  CStarPresentation tpres(tdb.bundle());
  auto tdelta = Comultiplication::dynamical(tdb);
  auto chars = dual_group(cyclic(2));
  Functional chi = trivial_character_functional(tdb.bundle(), chars[1]);
  Coefficient tc(random_section(tdb.bundle(), rng), random_section(tdb.bundle(), rng));
  FourierElement tact = multiplier_action(chi, tc, tdelta, tpres);
  ClassicalFunction base = tb_isomorphism(tc);
  for (int s = 0; s < 2; ++s) {
    ComplexMatrix val = tact.value(s, left_regular_matrix(cyclic(2), s));
    Complex expect = chars[1].values[s] * base(s);
    CHECK((val - expect * ComplexMatrix::Identity(2, 2)).norm() < 1e-11);
  }
}

TEST_CASE("star is an isometric involution realized by swapping the legs") {
  auto db = m2_inner_bundle();
  auto b = db.bundle();
  Rng rng(43);
  const auto& g = b->group();
  Coefficient c(random_section(b, rng), random_section(b, rng));
  Coefficient cs = star(c);

  // the displayed identity: evaluate(star c, s, b) = evaluate(c, s^{-1}, b†)†
  for (int s = 0; s < g.order(); ++s) {
    ComplexMatrix x = b->fiber(s).random_element(rng);
    ComplexMatrix lhs = evaluate(cs, s, x);
    ComplexMatrix rhs = evaluate(c, g.inv(s), x.adjoint()).adjoint();
    CHECK((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
  }

  // double star is the identity on evaluations
  Coefficient css = star(cs);
  for (int s = 0; s < g.order(); ++s) {
    ComplexMatrix x = b->fiber(s).random_element(rng);
    CHECK((evaluate(css, s, x) - evaluate(c, s, x)).norm() < 1e-12);
  }

  // upper bounds agree (star is isometric in the computable bounds)
  CHECK(l2_norm(cs.xi()) * l2_norm(cs.eta()) ==
        doctest::Approx(l2_norm(c.xi()) * l2_norm(c.eta())).epsilon(1e-12));

  // trivial bundle: star is the classical conjugate flip
  auto tb = trivial_bundle(cyclic(4));
  Coefficient tc(random_section(tb, rng), random_section(tb, rng));
  ClassicalFunction u = tb_isomorphism(tc);
  ClassicalFunction us = tb_isomorphism(star(tc));
  for (int s = 0; s < 4; ++s)
    CHECK(std::abs(us(s) - std::conj(u(cyclic(4).inv(s)))) < 1e-11);
}

TEST_CASE("A(G)-module action is pointwise multiplication") {
  auto b = trivial_bundle(symmetric(3));
  Rng rng(47);
  Coefficient c(random_section(b, rng), random_section(b, rng));
  std::vector<Complex> alpha, beta;
  for (int s = 0; s < 6; ++s) {
    alpha.push_back(rng.cgauss());
    beta.push_back(rng.cgauss());
  }
  ClassicalFunction u = classical_coefficient(b->group(), alpha, beta);
  FourierElement act = ag_module_action(u, c);
  for (int s = 0; s < 6; ++s) {
    ComplexMatrix lhs = act.value(s, left_regular_matrix(b->group(), s));
    ComplexMatrix rhs = u(s) * evaluate(c, s, left_regular_matrix(b->group(), s));
    CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
  }
  // cross-check through the classical picture
  ClassicalFunction base = tb_isomorphism(c);
  for (int s = 0; s < 6; ++s) {
    ComplexMatrix val = act.value(s, left_regular_matrix(b->group(), s));
    Complex expect = u(s) * base(s);
    CHECK((val - expect * ComplexMatrix::Identity(6, 6)).norm() < 1e-10);
  }
}

TEST_CASE("span of positive definite functionals") {
  auto db = diag2_swap_bundle();
  auto b = db.bundle();
  RegularRep rep(b);
  auto rep_data = materialize(rep);
  Rng rng(53);

  // positive definite functional with full support
  ComplexVector x = random_vector(rng, rep.dim());
  Functional phi = from_representation(rep_data, x, x);
  REQUIRE(is_positive_definite(phi));

  // T(phi) evaluates to (e,1) phi on the support
  FourierElement image = t_forward(phi, db);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < b->fiber(s).dim(); ++i) {
      ComplexMatrix expect =
          db.unit_element(0) * phi.apply(s, b->fiber(s).basis()[i]);
      CHECK((image.basis_value(s, i) - expect).norm() < 1e-11 * (1.0 + expect.norm()));
    }

  // round trip through the normalized trace state
  UnitFiberState psi = normalized_trace_state(db);
  CHECK(std::abs(psi.apply(db.unit_element(0)) - Complex(1.0)) < 1e-12);
  Functional back = t_psi(image, psi);
  for (int s = 0; s < 2; ++s)
    CHECK((back.component(s) - phi.component(s)).norm() < 1e-8 * (1.0 + phi.component(s).norm()));

  // functionals supported at the identity map to (e,1)-scalar images
  Functional at_e(b, {phi.component(0), ComplexMatrix::Zero(4, 4)});
  FourierElement ie = t_forward(at_e, db);
  for (int i = 0; i < b->fiber(1).dim(); ++i) CHECK(ie.basis_value(1, i).norm() < 1e-13);

  // T_psi of diagonal coefficients is positive definite
  for (int trial = 0; trial < 8; ++trial) {
    Section xi = random_section(b, rng);
    Coefficient diag(xi, xi);
    Functional tpsi = t_psi(FourierElement::of(diag), psi);
    CHECK(is_positive_definite(tpsi));
  }
}

TEST_CASE("products of coefficients are associative along the comultiplication") {
  auto db = diag2_swap_bundle();
  CStarPresentation pres(db.bundle());
  auto delta = Comultiplication::dynamical(db);
  Rng rng(59);
  Coefficient a(random_section(db.bundle(), rng), random_section(db.bundle(), rng));
  Coefficient bb(random_section(db.bundle(), rng), random_section(db.bundle(), rng));

  // submultiplicativity against the certified bounds
  FourierElement ab = multiply(a, bb, delta);
  auto iv = anorm_bounds(ab, pres, 3, 61);
  CHECK(iv.lower <=
        l2_norm(a.xi()) * l2_norm(a.eta()) * l2_norm(bb.xi()) * l2_norm(bb.eta()) + 1e-8);

  // trivial bundle: products map to pointwise products classically
  auto tdb = trivial_dynamical_bundle(cyclic(2));
  auto tdelta = Comultiplication::dynamical(tdb);
  Coefficient u(random_section(tdb.bundle(), rng), random_section(tdb.bundle(), rng));
  Coefficient v(random_section(tdb.bundle(), rng), random_section(tdb.bundle(), rng));
  FourierElement uv = multiply(u, v, tdelta);
  ClassicalFunction cu = tb_isomorphism(u), cv = tb_isomorphism(v);
  for (int s = 0; s < 2; ++s) {
    ComplexMatrix val = uv.value(s, left_regular_matrix(cyclic(2), s));
    Complex expect = cu(s) * cv(s);
    CHECK((val - expect * ComplexMatrix::Identity(2, 2)).norm() < 1e-11);
  }
}
