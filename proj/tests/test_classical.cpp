#include "doctest.h"
#include "fellb/classical.hpp"
#include "fellb/families.hpp"
#include "fellb/fourier.hpp"

using namespace fellb;

TEST_CASE("group C*-algebra block data") {
  for (int n : {1, 2, 3, 4, 6}) {
    GroupCStar gc(cyclic(n));
    CHECK(gc.irreducible_dimensions() == std::vector<int>(n, 1));
  }
  GroupCStar s3(symmetric(3));
  CHECK(s3.irreducible_dimensions() == std::vector<int>{1, 1, 2});

  GroupCStar d4(dihedral(4));
  CHECK(d4.irreducible_dimensions() == std::vector<int>{1, 1, 1, 1, 2});

  // sum of squares of irreducible dimensions equals the group order
  for (const auto* g : {"c2", "c4", "klein", "s3", "d4", "c6"}) {
    GroupCStar gc(named_group(g));
    int total = 0;
    for (int d : gc.irreducible_dimensions()) total += d * d;
    CHECK(total == gc.group().order());
  }
}

TEST_CASE("classical norms") {
  auto c4 = cyclic(4);
  GroupCStar gc(c4);

  // characters have norm one
  for (const auto& chi : dual_group(c4))
    CHECK(gc.bg_norm(character_function(c4, chi)) == doctest::Approx(1.0).epsilon(1e-10));

  // delta_e has norm one (Plancherel: sum over irreducibles of dim^2/|G|)
  CHECK(gc.bg_norm(delta_function(c4, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  GroupCStar s3(symmetric(3));
  CHECK(s3.bg_norm(delta_function(symmetric(3), 0)) == doctest::Approx(1.0).epsilon(1e-10));

  // zero function
  CHECK(gc.bg_norm(ClassicalFunction{c4, std::vector<Complex>(4, 0.0)}) ==
        doctest::Approx(0.0));

  // pointwise submultiplicativity on random pairs
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    ClassicalFunction u{c4, {}}, v{c4, {}};
    for (int s = 0; s < 4; ++s) {
      u.values.push_back(rng.cgauss());
      v.values.push_back(rng.cgauss());
    }
    CHECK(gc.bg_norm(pointwise_product(u, v)) <= gc.bg_norm(u) * gc.bg_norm(v) + 1e-8);
  }
}

TEST_CASE("tb isomorphism basics") {
  auto g = cyclic(2);
  auto b = trivial_bundle(g);
  Section je = j_embed(b, 0, ComplexMatrix::Identity(2, 2));
  Coefficient c(je, je);
  ClassicalFunction u = tb_isomorphism(c);
  CHECK(std::abs(u(0) - Complex(1.0)) < 1e-13);  // delta_e-like function
  CHECK(std::abs(u(1)) < 1e-13);

  // non trivial bundles are rejected
  auto db = diag2_swap_bundle();
  Rng rng(1);
  Section y = random_section(db.bundle(), rng);
  CHECK_THROWS_AS(tb_isomorphism(Coefficient(y, y)), std::invalid_argument);
}

TEST_CASE("tb image matches the evaluation formula") {
  auto g = symmetric(3);
  auto b = trivial_bundle(g);
  Rng rng(7);
  Section xi = random_section(b, rng);
  Section eta = random_section(b, rng);
  Coefficient c(xi, eta);
  ClassicalFunction u = tb_isomorphism(c);
  // theta strips the scalar part; the classical value at s equals
  // evaluate(s, lambda_s) / conj(1) acting on C·I
  for (int s = 0; s < g.order(); ++s) {
    ComplexMatrix val = evaluate(c, s, left_regular_matrix(g, s));
    // val = u(s) I (z_b = 1 for the generator)
    CHECK((val - u(s) * ComplexMatrix::Identity(g.order(), g.order())).norm() < 1e-10);
  }
}
