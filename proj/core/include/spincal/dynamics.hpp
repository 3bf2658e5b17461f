// dynamics.hpp -- constrained Hamiltonian flow of H = B(L,L)/2, fixed-step
// RK4 integration, and the monitors that certify the run: energy and
// invariant drift, constraint norm, Lax-form residual, spectral drift.

#pragma once

#include "spincal/phase.hpp"

namespace spincal {

struct PhaseTangent {
  AlgebraElement dq, dp, dxi;
};

struct IntegratorConfig {
  double step = 1e-3;
  double t_end = 10.0;
  // Classical fixed-step 4th order; kept explicit for the report files.
  std::string method = "rk4";
};

enum class ExitStatus { kCompleted, kDomainExit };

struct MonitorRow {
  double t = 0.0;
  double energy = 0.0;
  std::vector<double> invariants;  // tr(L^k), k = 2..kmax
  double chi_norm = 0.0;
  double lax_residual = 0.0;
  double spectral_drift = 0.0;     // vs the initial sorted spectrum of L
  std::vector<double> casimirs;    // tr(xi^k), k = 2..kmax
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<MonitorRow> monitors;
  ExitStatus exit_status = ExitStatus::kCompleted;
  int kmax = 2;
};

struct ConservationSummary {
  double energy_rel_drift = 0.0;
  std::vector<double> invariant_drifts;
  double max_chi_norm = 0.0;
  double max_lax_residual = 0.0;
  double eigenvalue_drift = 0.0;
  std::vector<double> casimir_drifts;
  ExitStatus exit_status = ExitStatus::kCompleted;
};

// Hamiltonian vector field on the constraint surface xi_K = 0:
// dq = p, dp_i = B(L, (d_i R) xi) raised over K, dxi = [xi, R^* L].
// Throws std::invalid_argument off the constraint surface.
PhaseTangent vector_field(const DynamicalRMatrix& r, const PhasePoint& point);

// ||dL/dt - [R(q) L, L]|| with dL/dt assembled from the chain rule along the
// Hamiltonian flow (no numerical differencing).  Well-defined off the
// constraint surface too, where it is nonzero in general.
double lax_residual(const DynamicalRMatrix& r, const PhasePoint& point);

// Recovers (dp, dxi_perp) from the K / Kperp decomposition of [R L, L];
// agrees with vector_field for the invertible catalog operators.
PhaseTangent reconstruct_from_lax(const DynamicalRMatrix& r,
                                  const PhasePoint& point);

// Fixed-step RK4 from a constrained initial point.  On domain exit the
// trajectory is truncated at the last completed step and flagged; no
// extrapolation through a collision.
Trajectory integrate(const DynamicalRMatrix& r, const PhasePoint& start,
                     const IntegratorConfig& config, int kmax = 2);

ConservationSummary conservation_report(const Trajectory& trajectory);

// Sorted defining-representation spectrum, the isospectrality monitor.
Eigen::VectorXcd sorted_spectrum(const AlgebraModel& model,
                                 const AlgebraElement& x);

}  // namespace spincal
