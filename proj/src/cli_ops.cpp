#include "fellb/cli_ops.hpp"

#include "fellb/families.hpp"
#include "fellb/matrix.hpp"

#include <fstream>
#include <set>

namespace fellb {

BundlePtr load_bundle_arg(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) return builtin_bundle(arg);
  return bundle_from_json(read_json_file(arg));
}

std::optional<DynamicalBundle> load_dynamical_arg(const std::string& arg) {
  return builtin_dynamical(arg);
}

CliResult cmd_verify(const std::string& bundle_arg) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  AxiomReport report = verify_bundle_axioms(*bundle);
  bool saturated = is_saturated(*bundle);
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"axiom", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  Json out{{"bundle", bundle_arg},
           {"ambient_dim", bundle->ambient_dim()},
           {"group_order", bundle->group().order()},
           {"axioms", std::move(checks)},
           {"all_pass", report.all_pass()},
           {"worst_residual", report.worst_residual()},
           {"saturated", saturated}};
  return CliResult{report.all_pass() ? 0 : 1, std::move(out)};
}

CliResult cmd_suite(const SuiteOptions& opts, const std::string& json_path,
                    const std::string& csv_path) {
  if (opts.max_group_order > 24 || opts.max_ambient > 32)
    throw std::invalid_argument("suite: caps exceed desk scale (group order <= 24, ambient <= 32)");
  SuiteReport report = run_suite(opts);
  Json out = suite_report_json(report);
  out["seed"] = opts.seed;
  if (!json_path.empty()) write_json_file(json_path, out);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write file: " + csv_path);
    csv << suite_report_csv(report);
  }
  return CliResult{report.all_pass() ? 0 : 1, std::move(out)};
}

CliResult cmd_norm(const std::string& bundle_arg, const std::string& section_path) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Section f = section_from_json(bundle, read_json_file(section_path));
  RegularRep rep(bundle);
  Json out{{"l1", l1_norm(f)}, {"l2", l2_norm(f)}, {"universal", universal_norm(rep, f)}};
  return CliResult{0, std::move(out)};
}

CliResult cmd_bnorm(const std::string& bundle_arg, const std::string& functional_path,
                    std::uint64_t seed) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Functional phi = functional_from_json(bundle, read_json_file(functional_path));
  CStarPresentation pres(bundle, seed);
  Json out{{"bnorm", bnorm(phi, pres)}};
  return CliResult{0, std::move(out)};
}

CliResult cmd_posdef(const std::string& bundle_arg, const std::string& functional_path) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Functional phi = functional_from_json(bundle, read_json_file(functional_path));
  Positivity p = classify_positive_definite(phi);
  ComplexMatrix gram = gns_gram(phi);
  double min_eig = gram.size() ? hermitian_eigenvalues(gram)(0) : 0.0;
  const char* label = p == Positivity::positive      ? "positive"
                      : p == Positivity::negative    ? "not-positive"
                                                     : "indeterminate";
  Json out{{"positive", label}, {"gram_min_eigenvalue", min_eig}};
  return CliResult{p == Positivity::negative ? 1 : 0, std::move(out)};
}

CliResult cmd_gns(const std::string& bundle_arg, const std::string& functional_path,
                  std::uint64_t seed) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Functional phi = functional_from_json(bundle, read_json_file(functional_path));
  GnsData data = gns(phi);
  CStarPresentation pres(bundle, seed);
  auto [norm, eta2] = check_eta_norm(phi, pres);
  Json out{{"dim", data.dim},
           {"eta_norm_squared", eta2},
           {"bnorm", norm},
           {"rep_residual", data.residual}};
  return CliResult{std::abs(norm - eta2) <= 1e-8 * (1.0 + norm) ? 0 : 1, std::move(out)};
}

CliResult cmd_fourier_eval(const std::string& bundle_arg, const std::string& xi_path,
                           const std::string& eta_path, int element) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Coefficient c(section_from_json(bundle, read_json_file(xi_path)),
                section_from_json(bundle, read_json_file(eta_path)));
  Json values = Json::object();
  auto emit = [&](int s) {
    Json per = Json::array();
    for (const auto& b : bundle->fiber(s).basis()) {
      ComplexMatrix val = evaluate(c, s, b);
      per.push_back(Json{{"value", matrix_to_json(val)},
                         {"unit_fiber_residual", bundle->fiber(0).membership_residual(val)}});
    }
    values[std::to_string(s)] = std::move(per);
  };
  if (element >= 0) {
    emit(element);
  } else {
    for (int s = 0; s < bundle->group().order(); ++s) emit(s);
  }
  return CliResult{0, Json{{"values", std::move(values)}}};
}

CliResult cmd_fourier_norm(const std::string& bundle_arg, const std::string& xi_path,
                           const std::string& eta_path, int budget, std::uint64_t seed) {
  BundlePtr bundle = load_bundle_arg(bundle_arg);
  Coefficient c(section_from_json(bundle, read_json_file(xi_path)),
                section_from_json(bundle, read_json_file(eta_path)));
  CStarPresentation pres(bundle, seed);
  auto iv = anorm_bounds(c, pres, budget, seed);
  Json out{{"lower", iv.lower}, {"upper", iv.upper}};
  return CliResult{0, std::move(out)};
}

CliResult cmd_fourier_eymard(const std::string& dynamical_arg, const std::vector<int>& k) {
  auto db = load_dynamical_arg(dynamical_arg);
  if (!db) throw std::invalid_argument("eymard: a builtin dynamical bundle is required");
  Coefficient u = eymard_element(*db, k);
  const auto& g = db->bundle()->group();
  std::set<int> kset(k.begin(), k.end());
  double worst = 0.0;
  for (int s = 0; s < g.order(); ++s)
    for (const auto& a : db->system().algebra.basis()) {
      ComplexMatrix val = evaluate(u, s, db->insert(s, a));
      ComplexMatrix expect = kset.count(s)
                                 ? db->insert(g.identity(), a.adjoint())
                                 : ComplexMatrix::Zero(db->bundle()->ambient_dim(),
                                                       db->bundle()->ambient_dim());
      worst = std::max(worst, (val - expect).norm() / (1.0 + expect.norm()));
    }
  Json out{{"K", k}, {"identity_residual", worst}, {"pass", worst <= 1e-12}};
  return CliResult{worst <= 1e-12 ? 0 : 1, std::move(out)};
}

CliResult cmd_fourier_folner(const std::string& dynamical_arg, const std::vector<int>& k,
                             double eps, int budget, std::uint64_t seed) {
  auto db = load_dynamical_arg(dynamical_arg);
  if (!db) throw std::invalid_argument("folner: a builtin dynamical bundle is required");
  CStarPresentation pres(db->bundle(), seed);
  auto delta = Comultiplication::dynamical(*db);
  Coefficient u = folner_approx_identity(*db, k, eps);
  double upper = l2_norm(u.xi()) * l2_norm(u.eta());
  Rng rng(seed);
  Section xi = random_section_supported(db->bundle(), {db->bundle()->group().identity()}, rng);
  Section eta = random_section_supported(db->bundle(), k, rng);
  double ratio =
      approx_identity_defect(u, Coefficient(xi, eta), k, delta, pres, budget, seed + 1);
  double expect = eps / (1.0 + eps);
  Json out{{"K", k},
           {"eps", eps},
           {"upper_bound", upper},
           {"ratio", ratio},
           {"expected_ratio", expect}};
  bool pass = upper <= 1.0 + 1e-12 && std::abs(ratio - expect) <= 1e-8;
  return CliResult{pass ? 0 : 1, std::move(out)};
}

CliResult cmd_takai(const std::string& instance, std::uint64_t seed) {
  struct Inst {
    std::string name;
    std::function<DynamicalSystem()> make;
  };
  std::vector<Inst> instances{
      {"scalars-c2",
       [] {
         return trivial_system(MatrixSubspace::from_span(1, {ComplexMatrix::Identity(1, 1)}),
                               cyclic(2));
       }},
      {"c2-swap",
       [] {
         std::vector<ComplexMatrix> gens;
         for (int i = 0; i < 2; ++i) {
           ComplexMatrix e = ComplexMatrix::Zero(2, 2);
           e(i, i) = 1.0;
           gens.push_back(std::move(e));
         }
         ComplexMatrix sw = ComplexMatrix::Zero(2, 2);
         sw(0, 1) = sw(1, 0) = 1.0;
         return conjugation_system(MatrixSubspace::from_span(2, gens), cyclic(2),
                                   {ComplexMatrix::Identity(2, 2), sw});
       }},
      {"m2-trivial", [] { return trivial_system(MatrixSubspace::full(2), cyclic(2)); }}};
  Json results = Json::array();
  bool all = true;
  for (const auto& inst : instances) {
    if (instance != "all" && instance != inst.name) continue;
    bool ok = takai_check(inst.make(), seed);
    all = all && ok;
    results.push_back(Json{{"instance", inst.name}, {"match", ok}});
  }
  if (results.empty()) throw std::invalid_argument("takai: unknown instance " + instance);
  return CliResult{all ? 0 : 1, Json{{"instances", std::move(results)}}};
}

CliResult cmd_probe_leptin_converse(const std::string& dynamical_arg, const std::vector<int>& k,
                                    double eps, int budget, std::uint64_t seed) {
  auto db = load_dynamical_arg(dynamical_arg);
  if (!db) throw std::invalid_argument("probe: a builtin dynamical bundle is required");
  const auto& g = db->bundle()->group();
  CStarPresentation pres(db->bundle(), seed);
  auto delta = Comultiplication::dynamical(*db);
  Rng rng(seed);

  // Sweep Folner-type candidates over subsets C, measuring the worst defect
  // against supported test vectors. Finite groups are amenable, so some
  // candidate always pushes the defect to eps/(1+eps); the probe documents
  // that no counterexample to the converse can appear at this scale.
  Json candidates = Json::array();
  double best_defect = std::numeric_limits<double>::infinity();
  const int order = g.order();
  for (int mask = 1; mask < (1 << order); ++mask) {
    std::vector<int> c;
    for (int s = 0; s < order; ++s)
      if (mask & (1 << s)) c.push_back(s);
    std::set<int> kc;
    for (int a : k)
      for (int b : c) kc.insert(g.mul(a, b));
    double growth = static_cast<double>(kc.size()) / static_cast<double>(c.size());
    if (!(growth < 1.0 + eps)) continue;  // not a Folner certificate for this eps
    Section xi = indicator_section(*db, c);
    Section eta = indicator_section(*db, std::vector<int>(kc.begin(), kc.end()));
    double scale = 1.0 / ((1.0 + eps) * static_cast<double>(c.size()));
    Coefficient u(xi, Complex(scale) * eta);
    double worst = 0.0;
    for (int trial = 0; trial < std::max(1, budget); ++trial) {
      Section vx = random_section_supported(db->bundle(), {g.identity()}, rng);
      Section ve = random_section_supported(db->bundle(), k, rng);
      worst = std::max(worst, approx_identity_defect(u, Coefficient(vx, ve), k, delta, pres, 2,
                                                     seed + 7 + trial));
    }
    best_defect = std::min(best_defect, worst);
    candidates.push_back(Json{{"C", c}, {"growth", growth}, {"worst_defect", worst}});
  }
  Json out{{"group_order", order},
           {"K", k},
           {"eps", eps},
           {"candidates", std::move(candidates)},
           {"best_defect", best_defect},
           {"note", "every finite group is amenable: a bounded approximate identity always "
                    "exists, so no counterexample to the converse is reachable at this scale"}};
  return CliResult{0, std::move(out)};
}

}  // namespace fellb
