#pragma once

#include "fellb/suite.hpp"

#include <optional>
#include <string>

namespace fellb {

/// Stable exit codes: 0 all checks pass, 1 check failures, 2 input errors.
struct CliResult {
  int exit_code = 0;
  Json output;
};

/// Resolves a bundle argument: "builtin:<family>:<variant>" or a JSON file.
BundlePtr load_bundle_arg(const std::string& arg);
std::optional<DynamicalBundle> load_dynamical_arg(const std::string& arg);

CliResult cmd_verify(const std::string& bundle_arg);
CliResult cmd_suite(const SuiteOptions& opts, const std::string& json_path,
                    const std::string& csv_path);
CliResult cmd_norm(const std::string& bundle_arg, const std::string& section_path);
CliResult cmd_bnorm(const std::string& bundle_arg, const std::string& functional_path,
                    std::uint64_t seed);
CliResult cmd_posdef(const std::string& bundle_arg, const std::string& functional_path);
CliResult cmd_gns(const std::string& bundle_arg, const std::string& functional_path,
                  std::uint64_t seed);
CliResult cmd_fourier_eval(const std::string& bundle_arg, const std::string& xi_path,
                           const std::string& eta_path, int element);
CliResult cmd_fourier_norm(const std::string& bundle_arg, const std::string& xi_path,
                           const std::string& eta_path, int budget, std::uint64_t seed);
CliResult cmd_fourier_eymard(const std::string& dynamical_arg, const std::vector<int>& k);
CliResult cmd_fourier_folner(const std::string& dynamical_arg, const std::vector<int>& k,
                             double eps, int budget, std::uint64_t seed);
CliResult cmd_takai(const std::string& instance, std::uint64_t seed);
CliResult cmd_probe_leptin_converse(const std::string& dynamical_arg, const std::vector<int>& k,
                                    double eps, int budget, std::uint64_t seed);

}  // namespace fellb
