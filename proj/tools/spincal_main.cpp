// spincal -- batch front end: catalog listing, residual verification sweeps,
// spin Calogero simulation runs, and reduction checks.
//
// Exit codes: 0 all pass, 1 property failure, 2 config error, 3 domain exit.

#include "spincal/config.hpp"
#include "spincal/report.hpp"
#include "spincal/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDomainExit = 3;

struct CommonFlags {
  std::string config_path;
  std::string algebra;
  std::string kind;
  std::string out_path;
  bool json = false;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  int threads = 0;

  bool perturb_set = false, seed_set = false, samples_set = false,
       threads_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "JSON run configuration");
  cmd->add_option("--algebra", flags->algebra,
                  "catalog descriptor, e.g. sl(3), su(2), sl(2)^3");
  cmd->add_option("--kind", flags->kind, "r-matrix kind: abelian|nonabelian");
  cmd->add_option("--out", flags->out_path, "write the report to a file");
  cmd->add_flag("--json", flags->json, "machine-readable output");
  cmd->add_option("--perturb", flags->perturb,
                  "negative control: perturb the operator by eps")
      ->trigger_on_parse(false);
  cmd->add_option("--seed", flags->seed, "random seed");
  cmd->add_option("--samples", flags->samples, "samples per property");
  cmd->add_option("--threads", flags->threads, "worker threads");
}

spincal::RunConfig merge_config(const CLI::App* cmd, const CommonFlags& flags) {
  spincal::RunConfig cfg;
  if (!flags.config_path.empty())
    cfg = spincal::load_config_file(flags.config_path);
  if (cmd->count("--algebra"))
    cfg.algebra = spincal::CatalogDescriptor::parse(flags.algebra);
  if (cmd->count("--kind")) cfg.rmatrix_kind = flags.kind;
  if (cmd->count("--seed")) cfg.seed = flags.seed;
  if (cmd->count("--samples")) cfg.samples = flags.samples;
  if (cmd->count("--threads")) cfg.threads = flags.threads;
  if (cmd->count("--perturb")) cfg.perturb = flags.perturb;
  if (cmd->count("--out")) cfg.output.path = flags.out_path;
  if (cmd->count("--json")) cfg.output.format = "json";
  cfg.kind();  // validate
  return cfg;
}

spincal::VerifyOptions to_verify_options(const spincal::RunConfig& cfg) {
  spincal::VerifyOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  opts.perturb = cfg.perturb;
  opts.tolerance_override = cfg.residual_tolerance;
  opts.sampler = cfg.sampler;
  return opts;
}

int emit_report(const spincal::VerificationReport& report,
                const spincal::RunConfig& cfg) {
  const std::string body = cfg.output.format == "json"
                               ? spincal::render_report_json(report)
                               : spincal::render_report_text(report);
  if (cfg.output.path.empty())
    std::cout << body;
  else
    spincal::write_file(cfg.output.path, body);
  return report.all_pass() ? kExitOk : kExitPropertyFailure;
}

int cmd_catalog(bool as_json) {
  using spincal::CatalogDescriptor;
  using spincal::Family;
  std::vector<CatalogDescriptor> entries;
  for (int n = 2; n <= 8; ++n)
    entries.push_back({Family::kSpecialLinear, n, 1});
  for (int n = 2; n <= 8; ++n)
    entries.push_back({Family::kSpecialUnitary, n, 1});
  for (int m = 2; m <= 8; ++m)
    for (int copies = 2; copies <= 4; ++copies)
      entries.push_back({Family::kProductSpecialLinear, m, copies});

  auto dim_of = [](const CatalogDescriptor& d) {
    const int factor = d.n * d.n - 1;
    return d.is_product() ? d.copies * factor : factor;
  };
  auto autos_of = [](const CatalogDescriptor& d) {
    return d.is_product() ? "cyclic" : "identity";
  };

  if (as_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& d : entries) {
      nlohmann::ordered_json e;
      e["label"] = d.label();
      e["dim"] = dim_of(d);
      e["rank"] = d.n - 1;
      e["weyl_order"] = spincal::weyl_order(d);
      e["automorphism"] = autos_of(d);
      e["kinds"] = {"abelian", "nonabelian"};
      j.push_back(e);
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("%-12s %6s %6s %12s %-12s %s\n", "algebra", "dim", "rank",
              "weyl_order", "automorphism", "kinds");
  for (const auto& d : entries)
    std::printf("%-12s %6d %6d %12zu %-12s %s\n", d.label().c_str(), dim_of(d),
                d.n - 1, spincal::weyl_order(d), autos_of(d),
                "abelian nonabelian");
  return kExitOk;
}

int cmd_verify(const CLI::App* cmd, const CommonFlags& flags) {
  const spincal::RunConfig cfg = merge_config(cmd, flags);
  const auto model = spincal::make_model(cfg.algebra);
  const auto report = spincal::run_verification(model, cfg.kind(),
                                                cfg.theta_label(),
                                                to_verify_options(cfg));
  return emit_report(report, cfg);
}

int cmd_reduce_check(const CLI::App* cmd, const CommonFlags& flags) {
  const spincal::RunConfig cfg = merge_config(cmd, flags);
  const auto model = spincal::make_model(cfg.algebra);
  const auto report = spincal::run_reduction_checks(model, cfg.theta_label(),
                                                    to_verify_options(cfg));
  return emit_report(report, cfg);
}

int cmd_simulate(const CLI::App* cmd, const CommonFlags& flags) {
  const spincal::RunConfig cfg = merge_config(cmd, flags);
  if (cfg.kind() != spincal::RMatrixKind::kAbelian)
    throw spincal::ConfigError(
        "simulate runs the Abelian constrained flow; set rmatrix.kind = "
        "abelian");
  const auto model = spincal::make_model(cfg.algebra);
  const auto r =
      spincal::DynamicalRMatrix::alekseev_meinrenken(model, cfg.theta_label());
  const spincal::PhasePoint start = spincal::initial_point(cfg, *model, r);
  if (!spincal::is_constrained(*model, start))
    throw spincal::ConfigError("initial.xi must satisfy the constraint xi_K = 0");

  const spincal::Trajectory traj =
      spincal::integrate(r, start, cfg.integrator, cfg.effective_kmax());

  const std::string csv_path =
      cfg.output.path.empty() ? "trajectory.csv" : cfg.output.path;
  spincal::write_file(csv_path, spincal::trajectory_csv(*model, traj));
  std::cout << spincal::trajectory_summary_json(*model, traj);

  if (traj.exit_status == spincal::ExitStatus::kDomainExit)
    return kExitDomainExit;
  const auto summary = spincal::conservation_report(traj);
  return summary.energy_rel_drift <= cfg.drift_tolerance ? kExitOk
                                                         : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical r-matrices and spin Calogero models"};
  app.require_subcommand(1);

  bool catalog_json = false;
  CLI::App* catalog = app.add_subcommand("catalog", "list supported algebras");
  catalog->add_flag("--json", catalog_json, "machine-readable output");

  CommonFlags verify_flags, simulate_flags, reduce_flags;
  CLI::App* verify =
      app.add_subcommand("verify", "run the residual verification suites");
  add_common_flags(verify, &verify_flags);
  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the constrained flow");
  add_common_flags(simulate, &simulate_flags);
  CLI::App* reduce =
      app.add_subcommand("reduce-check", "run the reduction match suites");
  add_common_flags(reduce, &reduce_flags);

  try {
    app.parse(argc, argv);
    if (catalog->parsed()) return cmd_catalog(catalog_json);
    if (verify->parsed()) return cmd_verify(verify, verify_flags);
    if (simulate->parsed()) return cmd_simulate(simulate, simulate_flags);
    if (reduce->parsed()) return cmd_reduce_check(reduce, reduce_flags);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  } catch (const spincal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const spincal::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomainExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
