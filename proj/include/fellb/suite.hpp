#pragma once

#include "fellb/json_io.hpp"

namespace fellb {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  int max_group_order = 12;
  int max_ambient = 12;
  std::string family = "all";  // substring filter on check names; "all" keeps everything
};

struct SuiteCheck {
  std::string name;    // c<criterion>-<topic>/<instance>
  std::string anchor;  // the verified statement, in one line
  std::string status;  // pass | fail | indeterminate
  double residual = 0.0;
  double ms = 0.0;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;  // canonically ordered by name

  bool all_pass() const;
  double worst_residual() const;
};

/// Runs the verification registry: every numbered criterion below expands
/// into named checks with pinned tolerances. Deterministic for a fixed seed.
///
///  c01  bundle axioms and saturation on every shipped constructor
///  c02  regular representation: fiber isometry, *-laws, C*-identity
///  c03  dual isometry of B(B) against C*(B)* on saturated bundles
///  c04  norm of a positive functional = squared cyclic vector norm
///  c05  Jordan and polar decompositions, minimality of the factorization
///  c06  Banach-algebra structure under both comultiplication families
///  c07  trivial-bundle coefficients map isometrically onto A(G)
///  c08  Eymard elements act as the pointwise adjoint identity
///  c09  Folner elements: norm bound one and defect ratio eps/(1+eps)
///  c10  B(B) multiplies A(B) with the dual-norm bound
///  c11  double crossed products match the stabilized base algebra
///  c12  classical oracle self-consistency (Plancherel count, S3 blocks)
SuiteReport run_suite(const SuiteOptions& opts);

Json suite_report_json(const SuiteReport& report);
std::string suite_report_csv(const SuiteReport& report);

struct CriterionSummary {
  std::string id;
  std::string title;
  bool pass = false;
  double worst_residual = 0.0;
  int checks = 0;
};

std::vector<CriterionSummary> criterion_summary(const SuiteReport& report);

}  // namespace fellb
