#include "doctest.h"
#include "fellb/families.hpp"
#include "fellb/fourier.hpp"
#include "fellb/matrix.hpp"

using namespace fellb;

namespace {

const BundlePtr& tz2() {
  static BundlePtr b = trivial_bundle(cyclic(2));
  return b;
}

const CStarPresentation& tz2_pres() {
  static CStarPresentation p(tz2());
  return p;
}

Functional delta_e_functional(const BundlePtr& trivial) {
  const int n = trivial->ambient_dim();
  std::vector<ComplexMatrix> comps(trivial->group().order(), ComplexMatrix::Zero(n, n));
  comps[0] = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  return Functional(trivial, comps);
}

}  // namespace

TEST_CASE("pairing") {
  auto chars = dual_group(cyclic(2));
  Functional triv = trivial_character_functional(tz2(), chars[0]);
  Section de = j_embed(tz2(), 0, ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(pair(triv, de) - Complex(1.0)) < 1e-13);

  Functional zero = Functional::zero(tz2());
  CHECK(std::abs(pair(zero, de)) < 1e-15);

  // duality bound |pair| <= bnorm * universal norm
  Rng rng(3);
  RegularRep rep(tz2());
  for (int trial = 0; trial < 40; ++trial) {
    Functional phi = random_functional(tz2(), rng);
    Section f = random_section(tz2(), rng);
    CHECK(std::abs(pair(phi, f)) <=
          bnorm(phi, tz2_pres()) * universal_norm(rep, f) + 1e-8);
  }
}

TEST_CASE("bnorm frozen values on the trivial Z2 bundle") {
  auto chars = dual_group(cyclic(2));
  for (const auto& chi : chars) {
    Functional f = trivial_character_functional(tz2(), chi);
    CHECK(bnorm(f, tz2_pres()) == doctest::Approx(1.0).epsilon(1e-9));
    // sanity: it pairs to chi on the deltas
    for (int s = 0; s < 2; ++s) {
      Section ds = j_embed(tz2(), s, left_regular_matrix(cyclic(2), s));
      CHECK(std::abs(pair(f, ds) - chi.values[s]) < 1e-12);
    }
  }
  CHECK(bnorm(delta_e_functional(tz2()), tz2_pres()) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bnorm(Functional::zero(tz2()), tz2_pres()) == doctest::Approx(0.0));
}

TEST_CASE("from_representation and positive definiteness") {
  RegularRep rep(tz2());
  auto rep_data = materialize(rep);

  // xi = eta = vector of j_e(1) gives the delta_e functional
  Section je = j_embed(tz2(), 0, ComplexMatrix::Identity(2, 2));
  ComplexVector v = ComplexVector::Unit(2, 0);
  ComplexVector xi = rep.vector(je, v);
  Functional phi = from_representation(rep_data, xi, xi);
  Functional expected = delta_e_functional(tz2());
  for (int s = 0; s < 2; ++s)
    CHECK((phi.component(s) - expected.component(s)).norm() < 1e-12);

  // zero vector gives the zero functional
  Functional z = from_representation(rep_data, ComplexVector::Zero(4), xi);
  for (int s = 0; s < 2; ++s) CHECK(phi.bundle()->fiber(s).contains(z.component(s)));
  CHECK(z.support().empty());

  // diagonal coefficients are positive definite
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexVector x = random_vector(rng, rep.dim());
    CHECK(is_positive_definite(from_representation(rep_data, x, x)));
  }

  // pair values (1, 2) on the deltas give the non-PSD Gram [[1,2],[2,1]]
  std::vector<ComplexMatrix> comps{ComplexMatrix::Identity(2, 2) / 2.0,
                                   left_regular_matrix(cyclic(2), 1)};
  Functional bad(tz2(), comps);
  CHECK(std::abs(pair(bad, j_embed(tz2(), 0, ComplexMatrix::Identity(2, 2))) - 1.0) < 1e-12);
  CHECK(std::abs(pair(bad, j_embed(tz2(), 1, left_regular_matrix(cyclic(2), 1))) - 2.0) < 1e-12);
  CHECK(classify_positive_definite(bad) == Positivity::negative);
  CHECK_FALSE(is_positive_definite(bad));
}

TEST_CASE("gns construction") {
  auto chars = dual_group(cyclic(2));

  // trivial character: one-dimensional space, unit cyclic vector
  Functional triv = trivial_character_functional(tz2(), chars[0]);
  GnsData g1 = gns(triv);
  CHECK(g1.dim == 1);
  CHECK(g1.eta.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g1.residual < 1e-9);

  // delta_e: two-dimensional with the regular representation
  GnsData g2 = gns(delta_e_functional(tz2()));
  CHECK(g2.dim == 2);
  CHECK(g2.residual < 1e-9);

  // zero functional: zero-dimensional space
  GnsData g0 = gns(Functional::zero(tz2()));
  CHECK(g0.dim == 0);
  CHECK(g0.eta.norm() == doctest::Approx(0.0));

  // GNS round trip: the coefficient of (eta, eta) recovers the functional
  Rng rng(7);
  RegularRep rep(tz2());
  auto rep_data = materialize(rep);
  ComplexVector x = random_vector(rng, rep.dim());
  Functional phi = from_representation(rep_data, x, x);
  GnsData gd = gns(phi);
  Functional back = from_representation(gd.rep, gd.eta, gd.eta);
  for (int s = 0; s < 2; ++s)
    CHECK((back.component(s) - phi.component(s)).norm() < 1e-9 * (1.0 + phi.component(s).norm()));

  CHECK_THROWS_AS(gns(Functional(tz2(), {ComplexMatrix::Identity(2, 2) / 2.0,
                                         left_regular_matrix(cyclic(2), 1)})),
                  std::invalid_argument);
}

TEST_CASE("the norm of a positive functional is the squared cyclic norm") {
  auto chars = dual_group(cyclic(2));
  Functional triv = trivial_character_functional(tz2(), chars[0]);
  auto [n1, e1] = check_eta_norm(triv, tz2_pres());
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e1 == doctest::Approx(1.0).epsilon(1e-9));

  // scaling covariance
  auto [n2, e2] = check_eta_norm(Complex(2.0) * triv, tz2_pres());
  CHECK(n2 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(e2 == doctest::Approx(2.0).epsilon(1e-9));

  // random GNS-built positive functionals across bundles
  Rng rng(11);
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 4) continue;
    INFO(nb.name);
    CStarPresentation pres(nb.bundle);
    RegularRep rep(nb.bundle);
    auto rep_data = materialize(rep);
    for (int trial = 0; trial < 10; ++trial) {
      ComplexVector x = random_vector(rng, rep.dim());
      Functional phi = from_representation(rep_data, x, x);
      auto [n, e2x] = check_eta_norm(phi, pres);
      CHECK(std::abs(n - e2x) <= 1e-8 * (1.0 + n));
    }
  }
}

TEST_CASE("jordan decomposition") {
  Rng rng(13);
  auto pres = CStarPresentation(m2_inner_bundle().bundle());
  auto bundle = pres.bundle_ptr();

  // positive functional decomposes as (phi, 0, 0, 0)
  RegularRep rep(bundle);
  auto rep_data = materialize(rep);
  ComplexVector x = random_vector(rng, rep.dim());
  Functional pos = from_representation(rep_data, x, x);
  auto parts = jordan_decompose(pos, pres);
  for (int s = 0; s < bundle->group().order(); ++s) {
    CHECK((parts[0].component(s) - pos.component(s)).norm() < 1e-9 * (1.0 + pos.component(s).norm()));
    CHECK(parts[1].component(s).norm() < 1e-9);
    CHECK(parts[2].component(s).norm() < 1e-9);
    CHECK(parts[3].component(s).norm() < 1e-9);
  }

  // i * positive lands in the third slot
  auto parts_i = jordan_decompose(Complex(0, 1) * pos, pres);
  for (int s = 0; s < bundle->group().order(); ++s) {
    CHECK((parts_i[2].component(s) - pos.component(s)).norm() <
          1e-9 * (1.0 + pos.component(s).norm()));
    CHECK(parts_i[0].component(s).norm() < 1e-9);
  }

  // random functionals: recombination and positivity of all four parts
  for (int trial = 0; trial < 10; ++trial) {
    Functional phi = random_functional(bundle, rng);
    auto p = jordan_decompose(phi, pres);
    for (const auto& part : p) CHECK(is_positive_definite(part));
    Functional recomb = (p[0] - p[1]) + Complex(0, 1) * (p[2] - p[3]);
    for (int s = 0; s < bundle->group().order(); ++s)
      CHECK((recomb.component(s) - phi.component(s)).norm() <
            1e-10 * (1.0 + phi.component(s).norm()));
  }
}

TEST_CASE("polar factorization") {
  Rng rng(17);
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 4 || nb.bundle->fiber(0).dim() == 0) continue;
    INFO(nb.name);
    CStarPresentation pres(nb.bundle);
    for (int trial = 0; trial < 6; ++trial) {
      Functional phi = random_functional(nb.bundle, rng);
      auto pf = polar_factorization(phi, pres);
      CHECK(std::abs(pf.product - pf.norm) <= 1e-7 * (1.0 + pf.norm));
      // the factorization really represents phi
      Functional back = from_representation(pf.gns.rep, pf.xi, pf.eta);
      for (int s = 0; s < nb.bundle->group().order(); ++s)
        CHECK((back.component(s) - phi.component(s)).norm() <
              1e-7 * (1.0 + phi.component(s).norm()));
      // sampled factorizations never undercut the polar product
      double min_sampled = sampled_factorization_minimum(pf, 100, 100 + trial);
      CHECK(min_sampled >= pf.product - 1e-6);
    }
  }

  // positive functionals: xi = eta and the norm is the squared cyclic norm
  auto pres = tz2_pres();
  RegularRep rep(tz2());
  auto rep_data = materialize(rep);
  ComplexVector x = random_vector(rng, rep.dim());
  Functional pos = from_representation(rep_data, x, x);
  auto pf = polar_factorization(pos, pres);
  CHECK((pf.xi - pf.eta).norm() < 1e-7 * (1.0 + pf.eta.norm()));

  // unit-modulus scaling keeps both norms and reproduces the functional
  Complex c = std::polar(1.0, 0.7);
  auto pfc = polar_factorization(c * pos, pres);
  CHECK(pfc.product == doctest::Approx(pf.product).epsilon(1e-7));
  Functional back = from_representation(pfc.gns.rep, pfc.xi, pfc.eta);
  Functional target = c * pos;
  for (int s = 0; s < 2; ++s)
    CHECK((back.component(s) - target.component(s)).norm() < 1e-7);

  // zero functional edge case
  auto pz = polar_factorization(Functional::zero(tz2()), pres);
  CHECK(pz.product == doctest::Approx(0.0));
  CHECK(pz.norm == doctest::Approx(0.0));
}

TEST_CASE("module action of B(G)") {
  auto g = cyclic(2);
  auto chars = dual_group(g);
  Rng rng(19);
  Functional phi = random_functional(tz2(), rng);

  // the trivial character acts as the identity
  Functional same = bg_module_action(character_function(g, chars[0]), phi);
  for (int s = 0; s < 2; ++s) CHECK((same.component(s) - phi.component(s)).norm() < 1e-14);

  // a character scales the pairings pointwise
  Functional twisted = bg_module_action(character_function(g, chars[1]), phi);
  for (int s = 0; s < 2; ++s) {
    Section ds = j_embed(tz2(), s, left_regular_matrix(g, s));
    CHECK(std::abs(pair(twisted, ds) - chars[1].values[s] * pair(phi, ds)) < 1e-12);
  }

  // norm inequality bnorm(u phi) <= bg_norm(u) bnorm(phi)
  GroupCStar gc(g);
  for (int trial = 0; trial < 20; ++trial) {
    Functional f = random_functional(tz2(), rng);
    ClassicalFunction u{g, {rng.cgauss(), rng.cgauss()}};
    CHECK(bnorm(bg_module_action(u, f), tz2_pres()) <=
          gc.bg_norm(u) * bnorm(f, tz2_pres()) + 1e-8);
  }
}

TEST_CASE("products through the dynamical comultiplication") {
  auto db = diag2_swap_bundle();
  auto delta = Comultiplication::dynamical(db);
  CHECK(delta.coassociativity_residual() < 1e-14);
  CStarPresentation pres(db.bundle());
  Rng rng(23);

  // the unit-like functional is a left unit
  Functional unit = unit_like_functional(db);
  Functional psi = random_functional(db.bundle(), rng);
  Functional prod = multiply(unit, psi, delta);
  for (int s = 0; s < 2; ++s)
    CHECK((prod.component(s) - psi.component(s)).norm() < 1e-12 * (1.0 + psi.component(s).norm()));

  // submultiplicativity and associativity
  for (int trial = 0; trial < 20; ++trial) {
    Functional a = random_functional(db.bundle(), rng);
    Functional b = random_functional(db.bundle(), rng);
    Functional c = random_functional(db.bundle(), rng);
    CHECK(bnorm(multiply(a, b, delta), pres) <= bnorm(a, pres) * bnorm(b, pres) + 1e-8);
    Functional ab_c = multiply(multiply(a, b, delta), c, delta);
    Functional a_bc = multiply(a, multiply(b, c, delta), delta);
    for (int s = 0; s < 2; ++s)
      CHECK((ab_c.component(s) - a_bc.component(s)).norm() <
            1e-9 * (1.0 + a_bc.component(s).norm()));
  }
}

TEST_CASE("products through the Hopf comultiplication") {
  // trivial bundle, A = C: the product of characters is the pointwise product
  auto db = trivial_dynamical_bundle(cyclic(2));
  std::vector<ComplexMatrix> dc{ComplexMatrix::Ones(1, 1)};
  auto delta = Comultiplication::hopf(db, dc);
  CHECK(delta.coassociativity_residual() < 1e-14);

  auto chars = dual_group(cyclic(2));
  CStarPresentation pres(db.bundle());
  for (const auto& c1 : chars)
    for (const auto& c2 : chars) {
      Functional f1 = trivial_character_functional(db.bundle(), c1);
      Functional f2 = trivial_character_functional(db.bundle(), c2);
      Functional prod = multiply(f1, f2, delta);
      for (int s = 0; s < 2; ++s) {
        Section ds = j_embed(db.bundle(), s, left_regular_matrix(cyclic(2), s));
        CHECK(std::abs(pair(prod, ds) - c1.values[s] * c2.values[s]) < 1e-12);
      }
    }

  // the C*(Z2) Hopf fiber: submultiplicative and associative
  auto hopf = hopf_c2_comultiplication();
  CHECK(hopf.coassociativity_residual() < 1e-12);
  CStarPresentation hpres(hopf.carrier().bundle());
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    Functional a = random_functional(hopf.carrier().bundle(), rng);
    Functional b = random_functional(hopf.carrier().bundle(), rng);
    Functional c = random_functional(hopf.carrier().bundle(), rng);
    CHECK(bnorm(multiply(a, b, hopf), hpres) <= bnorm(a, hpres) * bnorm(b, hpres) + 1e-8);
    Functional ab_c = multiply(multiply(a, b, hopf), c, hopf);
    Functional a_bc = multiply(a, multiply(b, c, hopf), hopf);
    for (int s = 0; s < 2; ++s)
      CHECK((ab_c.component(s) - a_bc.component(s)).norm() <
            1e-9 * (1.0 + a_bc.component(s).norm()));
  }
}

TEST_CASE("dual isometry check") {
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 4) continue;
    INFO(nb.name);
    CStarPresentation pres(nb.bundle);
    auto report = dual_iso_check(pres, 25, 42);
    CHECK(report.saturated == nb.expect_saturated);
    CHECK(report.pass(1e-4));
  }

  // zero functional: both sides vanish
  CHECK(bnorm(Functional::zero(tz2()), tz2_pres()) == doctest::Approx(0.0));
}
