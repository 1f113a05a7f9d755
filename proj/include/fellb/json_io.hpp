#pragma once

#include "fellb/fourier.hpp"

#include "json.hpp"

#include <string>

namespace fellb {

using Json = nlohmann::json;

/// Matrix encoding: row-major [[[re, im], ...], ...].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Group descriptor {"order": n, "cayley": [[...]], "labels": [...]};
/// the identity must sit at index 0.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// Bundle descriptor {"group": ..., "ambient_dim": n,
/// "fibers": {"<element>": [matrix, ...], ...}}. Fiber spans are
/// orthonormalized on load; validation beyond well-formedness is the job of
/// verify_bundle_axioms.
Json bundle_to_json(const FellBundle& b);
BundlePtr bundle_from_json(const Json& j);

/// Section values {"values": {"<element>": matrix, ...}} (missing elements
/// are zero); may carry an inline "bundle".
Json section_to_json(const Section& y);
Section section_from_json(const BundlePtr& bundle, const Json& j);

/// Functional components {"components": {"<element>": matrix, ...}}.
Json functional_to_json(const Functional& phi);
Functional functional_from_json(const BundlePtr& bundle, const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace fellb
