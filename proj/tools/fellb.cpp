#include "fellb/cli_ops.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FELLB_SEED")) return std::strtoull(env, nullptr, 10);
  return fellb::kDefaultSeed;
}

int emit(const fellb::CliResult& result) {
  std::cout << result.output.dump(2) << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fell bundles over finite groups: Fourier and Fourier-Stieltjes space toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "PRNG seed (overrides FELLB_SEED)");

  std::string bundle_arg, section_path, functional_path, xi_path, eta_path;
  std::string json_path, csv_path, family = "all", instance = "all";
  std::vector<int> k_set;
  double eps = 0.5;
  int budget = 4, element = -1;
  fellb::SuiteOptions suite_opts;

  auto* verify = app.add_subcommand("verify", "check the bundle axioms of a descriptor");
  verify->add_option("--bundle", bundle_arg, "bundle JSON file or builtin:<family>:<variant>")
      ->required();

  auto* suite = app.add_subcommand("suite", "run the full verification registry");
  suite->add_option("--family", family, "substring filter on check names");
  suite->add_option("--max-group", suite_opts.max_group_order, "largest group order");
  suite->add_option("--max-ambient", suite_opts.max_ambient, "largest ambient dimension");
  suite->add_option("--json", json_path, "write the JSON report here");
  suite->add_option("--csv", csv_path, "write the CSV report here");

  auto* norm = app.add_subcommand("norm", "l1, l2 and universal norms of a section");
  norm->add_option("--bundle", bundle_arg)->required();
  norm->add_option("--section", section_path)->required();

  auto* bnorm_cmd = app.add_subcommand("bnorm", "dual norm of a functional");
  bnorm_cmd->add_option("--bundle", bundle_arg)->required();
  bnorm_cmd->add_option("--functional", functional_path)->required();

  auto* posdef = app.add_subcommand("posdef", "positive-definiteness of a functional");
  posdef->add_option("--bundle", bundle_arg)->required();
  posdef->add_option("--functional", functional_path)->required();

  auto* gns_cmd = app.add_subcommand("gns", "GNS data of a positive functional");
  gns_cmd->add_option("--bundle", bundle_arg)->required();
  gns_cmd->add_option("--functional", functional_path)->required();

  auto* fourier = app.add_subcommand("fourier", "Fourier space operations");
  fourier->require_subcommand(1);
  auto* feval = fourier->add_subcommand("eval", "evaluate a coefficient on the fiber bases");
  feval->add_option("--bundle", bundle_arg)->required();
  feval->add_option("--xi", xi_path)->required();
  feval->add_option("--eta", eta_path)->required();
  feval->add_option("--element", element, "restrict to one group element");
  auto* fnorm = fourier->add_subcommand("norm", "certified norm interval of a coefficient");
  fnorm->add_option("--bundle", bundle_arg)->required();
  fnorm->add_option("--xi", xi_path)->required();
  fnorm->add_option("--eta", eta_path)->required();
  fnorm->add_option("--budget", budget, "ascent restarts");
  auto* feymard = fourier->add_subcommand("eymard", "verify the Eymard element of a subset");
  feymard->add_option("--bundle", bundle_arg, "builtin dynamical bundle")->required();
  feymard->add_option("--K", k_set, "subset of group elements")->required();
  auto* ffolner = fourier->add_subcommand("folner", "Folner approximate-identity element");
  ffolner->add_option("--bundle", bundle_arg, "builtin dynamical bundle")->required();
  ffolner->add_option("--K", k_set, "subset of group elements")->required();
  ffolner->add_option("--eps", eps);
  ffolner->add_option("--budget", budget);

  auto* takai = app.add_subcommand("takai", "double crossed product block comparison");
  takai->add_option("--instance", instance, "scalars-c2 | c2-swap | m2-trivial | all");

  auto* probe = app.add_subcommand("probe", "experiments");
  probe->require_subcommand(1);
  auto* leptin = probe->add_subcommand(
      "leptin-converse", "sweep Folner candidates for approximate identities");
  leptin->add_option("--bundle", bundle_arg, "builtin dynamical bundle")->required();
  leptin->add_option("--K", k_set, "subset of group elements")->required();
  leptin->add_option("--eps", eps);
  leptin->add_option("--budget", budget);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return emit(fellb::cmd_verify(bundle_arg));
    if (*suite) {
      suite_opts.seed = seed;
      suite_opts.family = family;
      return emit(fellb::cmd_suite(suite_opts, json_path, csv_path));
    }
    if (*norm) return emit(fellb::cmd_norm(bundle_arg, section_path));
    if (*bnorm_cmd) return emit(fellb::cmd_bnorm(bundle_arg, functional_path, seed));
    if (*posdef) return emit(fellb::cmd_posdef(bundle_arg, functional_path));
    if (*gns_cmd) return emit(fellb::cmd_gns(bundle_arg, functional_path, seed));
    if (*feval) return emit(fellb::cmd_fourier_eval(bundle_arg, xi_path, eta_path, element));
    if (*fnorm) return emit(fellb::cmd_fourier_norm(bundle_arg, xi_path, eta_path, budget, seed));
    if (*feymard) return emit(fellb::cmd_fourier_eymard(bundle_arg, k_set));
    if (*ffolner)
      return emit(fellb::cmd_fourier_folner(bundle_arg, k_set, eps, budget, seed));
    if (*takai) return emit(fellb::cmd_takai(instance, seed));
    if (*leptin)
      return emit(fellb::cmd_probe_leptin_converse(bundle_arg, k_set, eps, budget, seed));
  } catch (const fellb::degeneracy_error& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
