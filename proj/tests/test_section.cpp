#include "doctest.h"
#include "fellb/families.hpp"
#include "fellb/matrix.hpp"
#include "fellb/section.hpp"

using namespace fellb;

TEST_CASE("membership is enforced at construction") {
  auto b = trivial_bundle(cyclic(2));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // not a multiple of a permutation matrix
  std::vector<ComplexMatrix> vals{ComplexMatrix::Identity(2, 2), bad};
  CHECK_THROWS_AS(Section(b, vals), std::invalid_argument);
  CHECK_THROWS_AS(j_embed(b, 1, bad), std::invalid_argument);
}

TEST_CASE("convolution on the trivial bundle follows the group law") {
  auto g = symmetric(3);
  auto b = trivial_bundle(g);
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) {
      Section ys = j_embed(b, s, left_regular_matrix(g, s));
      Section zt = j_embed(b, t, left_regular_matrix(g, t));
      Section prod = convolve(ys, zt);
      Section expect = j_embed(b, g.mul(s, t), left_regular_matrix(g, g.mul(s, t)));
      CHECK((prod - expect).value(g.mul(s, t)).norm() < 1e-12);
      CHECK(prod.support() == std::vector<int>{g.mul(s, t)});
    }
}

TEST_CASE("convolution matches the twisted product on dynamical bundles") {
  auto db = diag2_swap_bundle();
  const auto& sys = db.system();
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    int s = rng.uniform_int(0, 1), t = rng.uniform_int(0, 1);
    ComplexMatrix a = sys.algebra.random_element(rng);
    ComplexMatrix c = sys.algebra.random_element(rng);
    Section ja = j_embed(db.bundle(), s, db.insert(s, a));
    Section jc = j_embed(db.bundle(), t, db.insert(t, c));
    Section prod = convolve(ja, jc);
    int st = sys.group.mul(s, t);
    ComplexMatrix expect = db.insert(st, a * sys.apply(s, c));
    CHECK((prod.value(st) - expect).norm() < 1e-12 * (1.0 + expect.norm()));
  }
}

TEST_CASE("associativity and involution laws on random sections") {
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 6) continue;
    INFO(nb.name);
    Rng rng(11);
    Section y = random_section(nb.bundle, rng);
    Section z = random_section(nb.bundle, rng);
    Section w = random_section(nb.bundle, rng);

    Section lhs = convolve(convolve(y, z), w);
    Section rhs = convolve(y, convolve(z, w));
    for (int s = 0; s < nb.bundle->group().order(); ++s)
      CHECK((lhs.value(s) - rhs.value(s)).norm() < 1e-10 * (1.0 + rhs.value(s).norm()));

    // (y*)* = y
    Section yss = involute(involute(y));
    for (int s = 0; s < nb.bundle->group().order(); ++s)
      CHECK((yss.value(s) - y.value(s)).norm() < 1e-14);

    // (y*z)* = z* * y*
    Section anti = involute(convolve(y, z));
    Section anti2 = convolve(involute(z), involute(y));
    for (int s = 0; s < nb.bundle->group().order(); ++s)
      CHECK((anti.value(s) - anti2.value(s)).norm() < 1e-12 * (1.0 + anti2.value(s).norm()));
  }
}

TEST_CASE("involution on the trivial bundle conjugates coefficients") {
  auto b = trivial_bundle(cyclic(2));
  Complex c(0.3, -1.7);
  Section f = c * j_embed(b, 1, left_regular_matrix(cyclic(2), 1));
  Section fs = involute(f);
  // element 1 is its own inverse, so the value picks up only a conjugate
  CHECK((fs.value(1) - std::conj(c) * left_regular_matrix(cyclic(2), 1)).norm() < 1e-14);
  // j_e(1)* = j_e(1)
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  CHECK((involute(je).value(0) - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("norms") {
  auto b = trivial_bundle(cyclic(2));
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  CHECK(l1_norm(je) == doctest::Approx(1.0));
  CHECK(l2_norm(je) == doctest::Approx(1.0));

  Section f = je + j_embed(b, 1, left_regular_matrix(cyclic(2), 1));
  CHECK(l1_norm(f) == doctest::Approx(2.0));

  // l1 is submultiplicative, l2 dominated by l1 on random sections
  Rng rng(2);
  for (const auto& nb : shipped_bundles()) {
    if (nb.bundle->group().order() > 6) continue;
    Section y = random_section(nb.bundle, rng);
    Section z = random_section(nb.bundle, rng);
    CHECK(l1_norm(convolve(y, z)) <= l1_norm(y) * l1_norm(z) + 1e-9);
    CHECK(l2_norm(y) <= l1_norm(y) + 1e-9);
  }

  // indicator of C in a unital dynamical bundle has l2 norm sqrt(|C|)
  auto db = diag2_swap_bundle();
  Section ind = indicator_section(db, {0, 1});
  CHECK(l2_norm(ind) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("module inner product") {
  auto db = m2_inner_bundle();
  auto b = db.bundle();
  Rng rng(9);
  const auto& sys = db.system();

  // <j_s(x), j_s(x)> = x† x and cross terms vanish
  ComplexMatrix a = sys.algebra.random_element(rng);
  ComplexMatrix x = db.insert(1, a);
  Section jx = j_embed(b, 1, x);
  CHECK((module_inner_product(jx, jx) - x.adjoint() * x).norm() < 1e-12 * (1.0 + x.norm()));
  Section je = j_embed(b, 0, db.insert(0, a));
  CHECK(module_inner_product(je, jx).norm() < 1e-14);

  Section y = random_section(b, rng);
  Section z = random_section(b, rng);
  // conjugate symmetry and positivity
  CHECK((module_inner_product(y, z).adjoint() - module_inner_product(z, y)).norm() < 1e-12);
  CHECK(psd_check(module_inner_product(y, y)));
  // membership of the inner product in B_e
  CHECK(b->fiber(0).contains(module_inner_product(y, z), 1e-8));

  // right-module compatibility <y, z·a> = <y,z>·a for a in B_e
  ComplexMatrix ae = db.insert(0, sys.algebra.random_element(rng));
  std::vector<ComplexMatrix> scaled;
  for (int s = 0; s < 2; ++s) scaled.push_back(z.value(s) * ae);
  Section za(b, scaled);
  CHECK((module_inner_product(y, za) - module_inner_product(y, z) * ae).norm() < 1e-12 * (1.0 + ae.norm()));

  // Cauchy-Schwarz
  CHECK(operator_norm(module_inner_product(y, z)) <= l2_norm(y) * l2_norm(z) + 1e-9);
}

TEST_CASE("bundle mismatch is rejected") {
  auto b1 = trivial_bundle(cyclic(2));
  auto b2 = trivial_bundle(cyclic(2));
  Rng rng(1);
  Section y = random_section(b1, rng);
  Section z = random_section(b2, rng);
  CHECK_THROWS_AS(convolve(y, z), std::invalid_argument);
  CHECK_THROWS_AS(module_inner_product(y, z), std::invalid_argument);
}
