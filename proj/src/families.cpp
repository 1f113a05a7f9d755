#include "fellb/families.hpp"

#include <stdexcept>

namespace fellb {

namespace {

MatrixSubspace diagonal_algebra(int n) {
  std::vector<ComplexMatrix> gens;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    gens.push_back(std::move(e));
  }
  return MatrixSubspace::from_span(n, gens);
}

ComplexMatrix swap2() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

}  // namespace

DynamicalBundle diag2_swap_bundle() {
  FiniteGroup g = cyclic(2);
  std::vector<ComplexMatrix> u{ComplexMatrix::Identity(2, 2), swap2()};
  return dynamical_bundle(conjugation_system(diagonal_algebra(2), g, u));
}

DynamicalBundle m2_inner_bundle() {
  FiniteGroup g = cyclic(2);
  ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  std::vector<ComplexMatrix> u{ComplexMatrix::Identity(2, 2), sz};
  return dynamical_bundle(conjugation_system(MatrixSubspace::full(2), g, u));
}

DynamicalBundle s3_sign_bundle() {
  FiniteGroup g = symmetric(3);
  // sign(s) is 0 exactly on the alternating elements (order 1 or 3)
  std::vector<ComplexMatrix> u;
  for (int s = 0; s < g.order(); ++s) {
    int ord = g.element_order(s);
    u.push_back(ord == 1 || ord == 3 ? ComplexMatrix::Identity(2, 2) : swap2());
  }
  return dynamical_bundle(conjugation_system(diagonal_algebra(2), g, u));
}

BundlePtr graded_m2_c2() {
  std::vector<std::vector<int>> grade(2, std::vector<int>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) grade[i][j] = (i - j + 2) % 2;
  return graded_bundle(MatrixSubspace::full(2), cyclic(2), grade);
}

BundlePtr graded_m3_c3() {
  std::vector<std::vector<int>> grade(3, std::vector<int>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grade[i][j] = (i - j + 3) % 3;
  return graded_bundle(MatrixSubspace::full(3), cyclic(3), grade);
}

SpectralBundle spectral_conj2() {
  FiniteGroup g = cyclic(2);
  ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  std::vector<ComplexMatrix> u{ComplexMatrix::Identity(2, 2), sz};
  return spectral_bundle(conjugation_system(MatrixSubspace::full(2), g, u));
}

SpectralBundle spectral_inner44() {
  FiniteGroup g = cyclic(2);
  // M2 (+) M2 block-diagonal in M4
  std::vector<ComplexMatrix> gens;
  for (int blk = 0; blk < 2; ++blk)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(4, 4);
        e(2 * blk + i, 2 * blk + j) = 1.0;
        gens.push_back(std::move(e));
      }
  MatrixSubspace alg = MatrixSubspace::from_span(4, gens);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = -1.0;
  u(2, 2) = 1.0;
  u(3, 3) = -1.0;  // inner: u lies in the algebra
  std::vector<ComplexMatrix> us{ComplexMatrix::Identity(4, 4), u};
  return spectral_bundle(conjugation_system(alg, g, us));
}

DynamicalBundle hopf_c2_bundle() {
  FiniteGroup g = cyclic(2);
  MatrixSubspace a = MatrixSubspace::from_span(2, {ComplexMatrix::Identity(2, 2), swap2()});
  return dynamical_bundle(trivial_system(a, g));
}

std::vector<NamedBundle> shipped_bundles() {
  std::vector<NamedBundle> out;
  for (const char* name : {"c2", "c4", "klein", "s3", "d4"})
    out.push_back({std::string("trivial:") + name, builtin_bundle(std::string("builtin:trivial:") + name),
                   true, std::nullopt});
  {
    auto db = diag2_swap_bundle();
    out.push_back({"dynamical:diag2", db.bundle(), true, db});
  }
  {
    auto db = m2_inner_bundle();
    out.push_back({"dynamical:inner2", db.bundle(), true, db});
  }
  {
    auto db = s3_sign_bundle();
    out.push_back({"dynamical:s3sign", db.bundle(), true, db});
  }
  out.push_back({"graded:m2c2", graded_m2_c2(), true, std::nullopt});
  out.push_back({"graded:m3c3", graded_m3_c3(), true, std::nullopt});
  out.push_back({"spectral:conj2", spectral_conj2().bundle, true, std::nullopt});
  out.push_back({"spectral:inner44", spectral_inner44().bundle, true, std::nullopt});
  return out;
}

FiniteGroup named_group(const std::string& name) {
  if (name == "klein") return klein_four();
  if (name == "s3") return symmetric(3);
  if (name == "s4") return symmetric(4);
  if (name.size() >= 2 && name[0] == 'd') return dihedral(std::stoi(name.substr(1)));
  if (name.size() >= 2 && name[0] == 'c') return cyclic(std::stoi(name.substr(1)));
  throw std::invalid_argument("unknown group name: " + name);
}

BundlePtr builtin_bundle(const std::string& name) {
  const std::string prefix = "builtin:";
  if (name.rfind(prefix, 0) != 0) return nullptr;
  std::string rest = name.substr(prefix.size());
  auto colon = rest.find(':');
  std::string family = rest.substr(0, colon);
  std::string variant = colon == std::string::npos ? "" : rest.substr(colon + 1);
  if (family == "trivial") return trivial_bundle(named_group(variant));
  if (family == "graded") {
    if (variant == "m2c2") return graded_m2_c2();
    if (variant == "m3c3") return graded_m3_c3();
  }
  if (family == "dynamical") {
    auto db = builtin_dynamical(name);
    if (db) return db->bundle();
  }
  if (family == "spectral") {
    if (variant == "conj2") return spectral_conj2().bundle;
    if (variant == "inner44") return spectral_inner44().bundle;
  }
  if (family == "hopf" && variant == "c2") return hopf_c2_bundle().bundle();
  throw std::invalid_argument("unknown builtin bundle: " + name);
}

std::optional<DynamicalBundle> builtin_dynamical(const std::string& name) {
  const std::string prefix = "builtin:dynamical:";
  std::string variant;
  if (name.rfind(prefix, 0) == 0) {
    variant = name.substr(prefix.size());
  } else if (name.rfind("builtin:trivialdyn:", 0) == 0) {
    return trivial_dynamical_bundle(named_group(name.substr(19)));
  } else {
    return std::nullopt;
  }
  if (variant == "diag2") return diag2_swap_bundle();
  if (variant == "inner2") return m2_inner_bundle();
  if (variant == "s3sign") return s3_sign_bundle();
  if (variant == "hopfc2") return hopf_c2_bundle();
  throw std::invalid_argument("unknown builtin dynamical bundle: " + name);
}

}  // namespace fellb
