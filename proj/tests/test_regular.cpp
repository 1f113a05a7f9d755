#include "doctest.h"
#include "fellb/families.hpp"
#include "fellb/matrix.hpp"
#include "fellb/regular.hpp"

#include <algorithm>

using namespace fellb;

TEST_CASE("regular representation of the trivial Z2 bundle") {
  auto g = cyclic(2);
  auto b = trivial_bundle(g);
  RegularRep rep(b);
  CHECK(rep.dim() == 4);  // two fibers, each with full column space C^2

  // lambda(j_e(1)) is the identity
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  CHECK((rep.matrix(je) - ComplexMatrix::Identity(4, 4)).norm() < 1e-13);

  // delta_1 acts as the swap of the two components: self-adjoint, squares to
  // the identity, trace zero (the regular representation of Z2 with
  // multiplicity two)
  Section d1 = j_embed(b, 1, left_regular_matrix(g, 1));
  ComplexMatrix m = rep.matrix(d1);
  CHECK((m * m - ComplexMatrix::Identity(4, 4)).norm() < 1e-13);
  CHECK((m - m.adjoint()).norm() < 1e-13);
  CHECK(std::abs(m.trace()) < 1e-13);
  CHECK(operator_norm(m) == doctest::Approx(1.0));

  // character oracle: || delta_0 + delta_1 || = max over chi |1 + chi(1)| = 2
  Section f = je + d1;
  CHECK(universal_norm(rep, f) == doctest::Approx(2.0).epsilon(1e-12));
  Section fm = je - d1;
  CHECK(universal_norm(rep, fm) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lambda moves single-fiber sections by the group law") {
  auto db = diag2_swap_bundle();
  auto b = db.bundle();
  RegularRep rep(b);
  Rng rng(3);
  const auto& sys = db.system();
  const auto& g = sys.group;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      ComplexMatrix x = db.insert(s, sys.algebra.random_element(rng));
      ComplexMatrix c = db.insert(t, sys.algebra.random_element(rng));
      // lambda_s(x) applied to the vector of j_t(c) ⊗ v equals the vector of
      // j_st(xc) ⊗ v
      ComplexVector v = random_vector(rng, b->ambient_dim());
      ComplexVector lhs = rep.matrix(s, x) * rep.vector(j_embed(b, t, c), v);
      ComplexVector rhs = rep.vector(j_embed(b, g.mul(s, t), x * c), v);
      CHECK((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("adjoint identity of the regular representation") {
  auto db = m2_inner_bundle();
  auto b = db.bundle();
  RegularRep rep(b);
  Rng rng(4);
  const auto& g = b->group();
  for (int s = 0; s < g.order(); ++s) {
    ComplexMatrix x = db.insert(s, db.system().algebra.random_element(rng));
    ComplexVector xi = random_vector(rng, rep.dim());
    ComplexVector eta = random_vector(rng, rep.dim());
    // <lambda_s(x) xi, eta> = <xi, lambda_{s^{-1}}(x†) eta>
    Complex lhs = (eta.adjoint() * (rep.matrix(s, x) * xi))(0, 0);
    Complex rhs = ((rep.matrix(g.inv(s), x.adjoint()) * eta).adjoint() * xi)(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("lambda is a *-representation and isometric on fibers") {
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 6) continue;
    INFO(nb.name);
    auto rep_data = materialize(RegularRep(nb.bundle));
    CHECK(rep_data.representation_residual() < 1e-10);

    RegularRep rep(nb.bundle);
    Rng rng(17);
    for (int s = 0; s < nb.bundle->group().order(); ++s) {
      if (nb.bundle->fiber(s).dim() == 0) continue;
      ComplexMatrix x = nb.bundle->fiber(s).random_element(rng);
      CHECK(operator_norm(rep.matrix(s, x)) == doctest::Approx(operator_norm(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("C*-identity for the universal norm") {
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 6) continue;
    INFO(nb.name);
    RegularRep rep(nb.bundle);
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      Section f = random_section(nb.bundle, rng);
      double n1 = universal_norm(rep, convolve(involute(f), f));
      double n2 = universal_norm(rep, f);
      CHECK(n1 == doctest::Approx(n2 * n2).epsilon(1e-8));
      CHECK(universal_norm(rep, f) <= l1_norm(f) + 1e-10);
    }
  }
}

TEST_CASE("presentation of the trivial Z2 bundle is two characters") {
  CStarPresentation pres(trivial_bundle(cyclic(2)));
  CHECK(pres.faithful());
  CHECK(pres.algebra().dim() == 2);
  CHECK(pres.blocks().sizes_with_multiplicity() == std::vector<int>{1, 1});
}

TEST_CASE("presentation of the trivial S3 bundle has blocks 1,1,2") {
  CStarPresentation pres(trivial_bundle(symmetric(3)));
  CHECK(pres.algebra().dim() == 6);
  CHECK(pres.blocks().sizes_with_multiplicity() == std::vector<int>{1, 1, 2});
}

TEST_CASE("presentation of the graded M3 bundle") {
  CStarPresentation pres(graded_m3_c3());
  RegularRep rep(graded_m3_c3());
  CHECK(pres.rep().dim() == 9);  // three fibers, each with full column space C^3
  CHECK(pres.algebra().dim() == 9);
  REQUIRE(pres.blocks().blocks.size() == 1);
  CHECK(pres.blocks().blocks[0].size == 3);
  CHECK(pres.blocks().blocks[0].multiplicity == 3);
}

TEST_CASE("section_of inverts lambda") {
  auto b = graded_m2_c2();
  CStarPresentation pres(b);
  Rng rng(31);
  Section f = random_section(b, rng);
  ComplexMatrix m = pres.rep().matrix(f);
  Section back = pres.section_of(m);
  for (int s = 0; s < b->group().order(); ++s)
    CHECK((back.value(s) - f.value(s)).norm() < 1e-9 * (1.0 + f.value(s).norm()));
}
