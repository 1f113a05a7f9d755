#pragma once

#include "fellb/bundle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fellb {

/// The bundle families shipped with the toolkit, used by the verification
/// suite and addressable from the command line as builtin:<name>.

DynamicalBundle diag2_swap_bundle();  // diagonal 2x2 matrices with Z2 swapping the entries
DynamicalBundle m2_inner_bundle();    // full M2 with Z2 acting by Ad(diag(1,-1))
DynamicalBundle s3_sign_bundle();     // diagonal 2x2 matrices with S3 acting through the sign map

BundlePtr graded_m2_c2();  // M2 graded over Z2 by (i - j) mod 2
BundlePtr graded_m3_c3();  // M3 graded over Z3 by (i - j) mod 3

SpectralBundle spectral_conj2();   // M2 with Z2 acting by Ad(diag(1,-1)), over the dual group
SpectralBundle spectral_inner44(); // M2 (+) M2 with an inner Z2 action, over the dual group

/// C*(Z2) = span{1, swap} in M2 as a Hopf C*-algebra carried by a trivial
/// Z2 action; the comultiplication sends each group unitary u to u ⊗ u.
DynamicalBundle hopf_c2_bundle();

struct NamedBundle {
  std::string name;
  BundlePtr bundle;
  bool expect_saturated = true;
  std::optional<DynamicalBundle> dynamical;  // present for action bundles
};

/// Every shipped constructor instance at desk scale.
std::vector<NamedBundle> shipped_bundles();

/// Resolves "builtin:<family>:<variant>" names, e.g. builtin:trivial:s3.
/// Returns nullptr when the name is not a builtin.
BundlePtr builtin_bundle(const std::string& name);
std::optional<DynamicalBundle> builtin_dynamical(const std::string& name);
FiniteGroup named_group(const std::string& name);

}  // namespace fellb
