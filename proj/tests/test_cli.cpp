#include "spincal/config.hpp"
#include "spincal/report.hpp"
#include "spincal/verify.hpp"

#include <doctest.h>

using namespace spincal;

namespace {

VerifyOptions quick_options(int samples, std::uint64_t seed, int threads = 1) {
  VerifyOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.threads = threads;
  return opts;
}

const PropertyResult& property_named(const VerificationReport& report,
                                     const std::string& name) {
  for (const auto& p : report.properties)
    if (p.name == name) return p;
  throw std::runtime_error("missing property " + name);
}

}  // namespace

TEST_CASE("config parsing: defaults and field overrides") {
  const RunConfig cfg = parse_config_text(R"cfg({
    "algebra": {"family": "sl", "n": 2, "copies": 3, "automorphism": "cyclic"},
    "rmatrix": {"kind": "nonabelian"},
    "integrator": {"step": 0.002, "t_end": 4.0},
    "tolerances": {"residual": 1e-8, "drift": 1e-7},
    "sampler": {"box": 0.9, "condition_limit": 50},
    "seed": 7, "samples": 33, "threads": 2,
    "output": {"format": "json", "path": "out.json"}
  })cfg");
  CHECK(cfg.algebra.label() == "sl(2)^3");
  CHECK(cfg.theta_label() == "cyclic");
  CHECK(cfg.kind() == RMatrixKind::kNonAbelian);
  CHECK(cfg.integrator.step == doctest::Approx(0.002));
  CHECK(cfg.residual_tolerance.value() == doctest::Approx(1e-8));
  CHECK(cfg.drift_tolerance == doctest::Approx(1e-7));
  CHECK(cfg.sampler.box == doctest::Approx(0.9));
  CHECK(cfg.sampler.condition_limit == doctest::Approx(50));
  CHECK(cfg.seed == 7);
  CHECK(cfg.samples == 33);
  CHECK(cfg.threads == 2);
  CHECK(cfg.output.format == "json");

  const RunConfig defaults = parse_config_text("{}");
  CHECK(defaults.algebra.label() == "sl(3)");
  CHECK(defaults.theta_label() == "identity");
  CHECK(defaults.effective_kmax() == 3);
}

TEST_CASE("config parsing: diagnostics carry the field path") {
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"integrator": {"step": -1}})cfg"),
                       doctest::Contains("integrator.step"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"tolerances": {"residual": 0}})cfg"),
                       doctest::Contains("tolerances.residual"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"algebra": {"family": "so", "n": 3}})cfg"),
                       doctest::Contains("algebra.family"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"algebra": "sl(9)"})cfg"),
                       doctest::Contains("algebra.n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"rmatrix": {"kind": "weird"}})cfg"),
                       doctest::Contains("rmatrix.kind"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"cfg({"samples": -5})cfg"),
                       doctest::Contains("samples"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config_text(R"cfg({"algebra": {"family": "su", "n": 2, "copies": 2}})cfg"),
      doctest::Contains("algebra.copies"), ConfigError);
}

TEST_CASE("initial point validation") {
  RunConfig cfg = parse_config_text(R"cfg({
    "algebra": "sl(2)",
    "initial": {"q": [1.0, 0, 0], "p": [0.3, 0, 0], "xi": [0, 2.0, -2.0]}
  })cfg");
  auto model = make_model(cfg.algebra);
  auto r = DynamicalRMatrix::alekseev_meinrenken(model, cfg.theta_label());
  const PhasePoint pt = initial_point(cfg, *model, r);
  CHECK(pt.q[0] == doctest::Approx(1.0));

  RunConfig no_initial = parse_config_text(R"cfg({"algebra": "sl(2)"})cfg");
  CHECK_THROWS_AS(initial_point(no_initial, *model, r), ConfigError);

  RunConfig short_q = cfg;
  short_q.q0 = std::vector<double>{1.0};
  CHECK_THROWS_WITH_AS(initial_point(short_q, *model, r),
                       doctest::Contains("length"), ConfigError);

  RunConfig singular = cfg;
  singular.q0 = std::vector<double>{0.0, 0.0, 0.0};
  CHECK_THROWS_WITH_AS(initial_point(singular, *model, r),
                       doctest::Contains("domain"), ConfigError);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  auto model = make_model(CatalogDescriptor::parse("sl(3)"));
  const auto r1 = run_verification(model, RMatrixKind::kAbelian, "identity",
                                   quick_options(40, 42, 1));
  const auto r1_again = run_verification(model, RMatrixKind::kAbelian,
                                         "identity", quick_options(40, 42, 1));
  const auto r4 = run_verification(model, RMatrixKind::kAbelian, "identity",
                                   quick_options(40, 42, 4));
  CHECK(render_report_json(r1) == render_report_json(r1_again));
  CHECK(render_report_json(r1) == render_report_json(r4));
  CHECK(render_report_text(r1) == render_report_text(r4));

  const auto other_seed = run_verification(model, RMatrixKind::kAbelian,
                                           "identity", quick_options(40, 43, 1));
  CHECK(render_report_json(r1) != render_report_json(other_seed));
}

TEST_CASE("perturbed verification fails exactly the residual identities") {
  auto model = make_model(CatalogDescriptor::parse("sl(3)"));
  VerifyOptions opts = quick_options(30, 42);
  opts.perturb = 1e-3;
  const auto report = run_verification(model, RMatrixKind::kAbelian,
                                       "identity", opts);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(property_named(report, "cdybe").pass);
  CHECK_FALSE(property_named(report, "quasi_lax_bracket").pass);
  CHECK(property_named(report, "cdybe").max_residual > 1e-5);
  CHECK(property_named(report, "quasi_lax_bracket").max_residual > 1e-5);
  CHECK(property_named(report, "equivariance").pass);
  CHECK(property_named(report, "quasi_triangularity").pass);
  CHECK(property_named(report, "compatibility").pass);
  CHECK(property_named(report, "first_class").pass);
  CHECK(property_named(report, "dirac_round_trip").pass);
}

TEST_CASE("reduction checks pass clean and fail the mismatched pair") {
  for (const char* name : {"sl(2)", "sl(2)^3"}) {
    auto model = make_model(CatalogDescriptor::parse(name));
    const std::string theta =
        model->algebra.descriptor().is_product() ? "cyclic" : "identity";
    const auto clean = run_reduction_checks(model, theta, quick_options(25, 42));
    CHECK(clean.all_pass());

    VerifyOptions opts = quick_options(25, 42);
    opts.perturb = 1e-2;
    const auto mismatched = run_reduction_checks(model, theta, opts);
    CHECK_FALSE(mismatched.all_pass());
    CHECK(property_named(mismatched, "quasi_lax_match").max_residual > 1e-4);
    CHECK(property_named(mismatched, "constraint_solution").pass);
    CHECK(property_named(mismatched, "two_form_match").pass);
    CHECK(property_named(mismatched, "weyl_identify_constructed").pass);
  }
}

TEST_CASE("trajectory CSV schema is fixed") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  CHECK(trajectory_csv_header(*model, 2) ==
        "t,q0,q1,q2,p0,p1,p2,xi0,xi1,xi2,H,h2,chi_norm,lax_residual,spec_drift");
  CHECK(std::string(kTrajectoryCsvSchema) == "spincal.trajectory.v1");
  CHECK(std::string(kReportSchema) == "spincal.report.v1");

  auto r = DynamicalRMatrix::alekseev_meinrenken(model, "identity");
  AlgebraElement q = AlgebraElement::Zero(3);
  q[0] = 1.0;
  AlgebraElement p = 0.3 * q;
  AlgebraElement xi = AlgebraElement::Zero(3);
  xi[1] = 2.0;
  xi[2] = -2.0;
  const Trajectory traj = integrate(r, {q, p, xi}, {1e-2, 0.1, "rk4"}, 2);
  const std::string csv = trajectory_csv(*model, traj);
  // Header + 11 data rows, CRLF line ends, numeric fields only.
  CHECK(csv.rfind("t,q0", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  CHECK(csv.find("\r\n") != std::string::npos);

  const std::string summary = trajectory_summary_json(*model, traj);
  CHECK(summary.find("\"exit_status\": \"completed\"") != std::string::npos);
}

TEST_CASE("report text and json carry the verdict") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  const auto report = run_verification(model, RMatrixKind::kAbelian, "identity",
                                       quick_options(10, 42));
  const std::string text = render_report_text(report);
  CHECK(text.find("overall: pass") != std::string::npos);
  CHECK(text.find("cdybe") != std::string::npos);
  const std::string json_body = render_report_json(report);
  CHECK(json_body.find("\"overall_pass\": true") != std::string::npos);
  CHECK(json_body.find("\"schema\": \"spincal.report.v1\"") != std::string::npos);
}

TEST_CASE("sampler exhaustion surfaces as a domain error") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = DynamicalRMatrix::alekseev_meinrenken(model, "identity");
  SampleRng rng(1);
  SamplerOptions opts;
  opts.box = 1e-12;  // the whole box is inside the excluded collision zone
  opts.max_tries = 50;
  CHECK_THROWS_AS(sample_domain_point(*model, r, rng, opts), DomainError);
}
