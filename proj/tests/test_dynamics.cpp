#include "spincal/dynamics.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace spincal;
using spincal::testing::TestRng;

namespace {

AlgebraElement basis_vector(const AlgebraModel& m, int a) {
  AlgebraElement e = AlgebraElement::Zero(m.dim());
  e[a] = 1.0;
  return e;
}

DynamicalRMatrix am(const ModelPtr& model) {
  const std::string theta =
      model->algebra.descriptor().is_product() ? "cyclic" : "identity";
  return DynamicalRMatrix::alekseev_meinrenken(model, theta);
}

PhasePoint constrained_point(const AlgebraModel& model,
                             const DynamicalRMatrix& r, TestRng& rng) {
  for (int tries = 0; tries < 500; ++tries) {
    Eigen::VectorXd coords(model.rank());
    for (int i = 0; i < model.rank(); ++i) coords[i] = rng.uniform(-1.0, 1.0);
    AlgebraElement q = model.cartan_element(coords);
    if (!r.in_domain(q) || r.domain_condition(q) > 100.0 ||
        regularity_gap(model, q) < 0.05)
      continue;
    PhasePoint pt;
    pt.q = q;
    pt.p = model.cartan_element(rng.gauss_vector(model.rank()));
    pt.xi = model.project_kperp(rng.gauss_vector(model.dim()));
    return pt;
  }
  throw std::runtime_error("could not sample a constrained point");
}

PhasePoint sl2_reference_start(const AlgebraModel& model) {
  const auto H = basis_vector(model, 0);
  const auto E = basis_vector(model, 1);
  const auto F = basis_vector(model, 2);
  return PhasePoint{1.0 * H, 0.3 * H, 2.0 * E - 2.0 * F};
}

}  // namespace

TEST_CASE("vector field: free motion and the geodesic part") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const auto H = basis_vector(*model, 0);

  PhasePoint free_pt{0.7 * H, 0.4 * H, AlgebraElement::Zero(3)};
  const PhaseTangent t0 = vector_field(r, free_pt);
  CHECK((t0.dq - free_pt.p).norm() == 0.0);
  CHECK(t0.dp.norm() < 1e-15);
  CHECK(t0.dxi.norm() == 0.0);

  // dq = p on the constraint surface.
  const PhasePoint pt = sl2_reference_start(*model);
  const PhaseTangent t1 = vector_field(r, pt);
  CHECK((t1.dq - pt.p).norm() < 1e-14);

  PhasePoint off = pt;
  off.xi += H;  // xi_K != 0
  CHECK_THROWS_AS(vector_field(r, off), std::invalid_argument);
}

TEST_CASE("energy is stationary along the flow") {
  for (const char* name : {"sl(2)", "sl(3)", "su(3)", "sl(2)^3"}) {
    auto model = make_model(CatalogDescriptor::parse(name));
    auto r = am(model);
    TestRng rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const PhasePoint pt = constrained_point(*model, r, rng);
      const PhaseTangent v = vector_field(r, pt);
      const PhaseGradient gh =
          observable_gradient(r, pt, quasi_lax(r, pt));
      const double dh = model->algebra.bilinear(gh.dq, v.dq) +
                        model->algebra.bilinear(gh.dp, v.dp) +
                        model->algebra.bilinear(gh.dxi, v.dxi);
      worst = std::max(worst, std::abs(dh));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Lax identity certifies the sign conventions") {
  for (const char* name : {"sl(2)", "sl(3)", "su(3)", "sl(2)^3"}) {
    auto model = make_model(CatalogDescriptor::parse(name));
    auto r = am(model);
    TestRng rng(5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const PhasePoint pt = constrained_point(*model, r, rng);
      worst = std::max(worst, lax_residual(r, pt));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Lax residual off the constraint surface is nonzero") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const auto H = basis_vector(*model, 0);
  PhasePoint pt = sl2_reference_start(*model);
  pt.xi += 0.8 * H;  // leave the constraint surface
  CHECK(lax_residual(r, pt) > 1e-3);

  PhasePoint zero{0.9 * H, 0.2 * H, AlgebraElement::Zero(3)};
  CHECK(lax_residual(r, zero) < 1e-15);
}

TEST_CASE("flow components recovered from the Lax decomposition") {
  for (const char* name : {"sl(2)", "sl(3)", "su(3)"}) {
    auto model = make_model(CatalogDescriptor::parse(name));
    auto r = am(model);
    TestRng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const PhasePoint pt = constrained_point(*model, r, rng);
      const PhaseTangent direct = vector_field(r, pt);
      const PhaseTangent recon = reconstruct_from_lax(r, pt);
      worst = std::max(worst, (direct.dp - recon.dp).norm());
      worst = std::max(
          worst, (model->project_kperp(direct.dxi) - recon.dxi).norm());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("reference sl(2) run conserves everything") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const PhasePoint start = sl2_reference_start(*model);
  const Trajectory traj = integrate(r, start, {1e-3, 10.0, "rk4"}, 2);
  CHECK(traj.exit_status == ExitStatus::kCompleted);
  CHECK(traj.times.size() == 10001);

  const ConservationSummary s = conservation_report(traj);
  CHECK(s.energy_rel_drift < 1e-8);
  CHECK(s.eigenvalue_drift < 1e-7);
  CHECK(s.max_chi_norm < 1e-9);
  CHECK(s.casimir_drifts[0] < 1e-8);
  CHECK(s.max_lax_residual < 1e-10);
}

TEST_CASE("independent one-degree-of-freedom oracle for the sl(2) run") {
  // On sl(2) the constrained flow closes on (t, s, ab): q = tH, p = sH,
  // xi = aE + bF, and s^2 - ab/(4 sinh^2 t) is a first integral evaluated
  // here straight from the stored coefficients.
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const PhasePoint start = sl2_reference_start(*model);
  const Trajectory traj = integrate(r, start, {1e-3, 10.0, "rk4"}, 2);

  const double e0 = 0.3 * 0.3 - (2.0 * -2.0) / (4.0 * std::sinh(1.0) * std::sinh(1.0));
  double worst = 0.0;
  for (const PhasePoint& state : traj.states) {
    const double t = state.q[0];
    const double s = state.p[0];
    const double ab = state.xi[1] * state.xi[2];
    CHECK(t > 0.0);  // repulsive wall: no collision
    const double e = s * s - ab / (4.0 * std::sinh(t) * std::sinh(t));
    worst = std::max(worst, std::abs(e - e0));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("step halving improves the energy drift by about 2^4") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const PhasePoint start = sl2_reference_start(*model);
  // Steps chosen so truncation error dominates rounding noise.
  const auto coarse = conservation_report(integrate(r, start, {4e-3, 10.0, "rk4"}, 2));
  const auto fine = conservation_report(integrate(r, start, {2e-3, 10.0, "rk4"}, 2));
  const double ratio = coarse.energy_rel_drift / fine.energy_rel_drift;
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("trigonometric regime stays bounded on su(3)") {
  auto model = make_model(CatalogDescriptor::parse("su(3)"));
  auto r = am(model);
  TestRng rng(11);
  PhasePoint start = constrained_point(*model, r, rng);
  start.p *= 0.2;
  const Trajectory traj = integrate(r, start, {1e-3, 5.0, "rk4"}, 3);
  CHECK(traj.exit_status == ExitStatus::kCompleted);
  const ConservationSummary s = conservation_report(traj);
  CHECK(s.energy_rel_drift < 1e-8);
  double max_q = 0.0;
  for (const auto& state : traj.states) max_q = std::max(max_q, state.q.norm());
  CHECK(max_q < 50.0);  // bounded oscillation, no runaway
}

TEST_CASE("gauge transforms commute with the flow") {
  auto model = make_model(CatalogDescriptor::parse("sl(3)"));
  auto r = am(model);
  TestRng rng(13);
  PhasePoint start = constrained_point(*model, r, rng);
  start.p *= 0.3;  // keep the hyperbolic growth mild over the run
  start.xi *= 0.3;
  const AlgebraElement kappa = model->cartan_element(rng.gauss_vector(2, 0.5));
  const IntegratorConfig cfg{1e-3, 1.0, "rk4"};

  const Trajectory direct = integrate(r, gauge_transform(*model, start, kappa), cfg, 2);
  const Trajectory moved = integrate(r, start, cfg, 2);
  const PhasePoint end_direct = direct.states.back();
  const PhasePoint end_moved =
      gauge_transform(*model, moved.states.back(), kappa);
  const double scale = std::max(1.0, end_moved.xi.norm());
  CHECK((end_direct.q - end_moved.q).norm() < 2e-8);
  CHECK((end_direct.p - end_moved.p).norm() < 2e-8);
  CHECK((end_direct.xi - end_moved.xi).norm() / scale < 2e-8);
}

TEST_CASE("attractive collision truncates with a domain exit") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const auto H = basis_vector(*model, 0);
  const auto E = basis_vector(*model, 1);
  const auto F = basis_vector(*model, 2);
  // ab > 0 makes the potential attractive; incoming momentum guarantees a
  // finite-time collision with the wall at q = 0.
  PhasePoint start{0.5 * H, -0.5 * H, 2.0 * E + 2.0 * F};
  const Trajectory traj = integrate(r, start, {1e-3, 10.0, "rk4"}, 2);
  CHECK(traj.exit_status == ExitStatus::kDomainExit);
  CHECK(traj.times.size() > 10);
  CHECK(traj.times.back() < 10.0);

  CHECK_THROWS_AS(integrate(r, start, {0.0, 1.0, "rk4"}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(r, start, {1e-3, 1.0, "euler"}, 2),
                  std::invalid_argument);
}

TEST_CASE("monitors populate every step") {
  auto model = make_model(CatalogDescriptor::parse("sl(2)"));
  auto r = am(model);
  const Trajectory traj =
      integrate(r, sl2_reference_start(*model), {1e-2, 0.5, "rk4"}, 2);
  REQUIRE(traj.monitors.size() == traj.times.size());
  REQUIRE(traj.monitors.size() == 51);
  for (size_t i = 0; i < traj.monitors.size(); ++i) {
    CHECK(traj.monitors[i].t == doctest::Approx(traj.times[i]));
    CHECK(traj.monitors[i].invariants.size() == 1);  // h_2 only for kmax = 2
    CHECK(std::isfinite(traj.monitors[i].energy));
  }
}
