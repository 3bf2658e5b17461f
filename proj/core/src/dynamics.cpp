#include "spincal/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace spincal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Hamiltonian flow of B(L,L)/2 without the constraint assumption:
// dq = P_K L, dp raised from B(L, (d_i R) xi), dxi = [grad_xi H, xi].
PhaseTangent raw_field(const DynamicalRMatrix& r, const PhasePoint& point) {
  const AlgebraModel& model = r.model();
  const LieAlgebra& g = model.algebra;
  const int dim = model.dim();
  const int rank = model.rank();

  const MatrixXd rm = r.evaluate(point.q);
  const AlgebraElement l_elem = point.p - rm * point.xi;

  PhaseTangent out;
  out.dq = model.project_k(l_elem);

  VectorXd partials(rank);
  for (int i = 0; i < rank; ++i) {
    AlgebraElement e = AlgebraElement::Zero(dim);
    e[i] = 1.0;
    partials[i] = g.bilinear(l_elem, r.derivative(point.q, e) * point.xi);
  }
  const MatrixXd gk = g.gram().topLeftCorner(rank, rank);
  out.dp = AlgebraElement::Zero(dim);
  out.dp.head(rank) = Eigen::PartialPivLU<MatrixXd>(gk).solve(partials);

  const AlgebraElement grad_xi = -(b_adjoint(model, rm) * l_elem);
  out.dxi = g.bracket(grad_xi, point.xi);
  return out;
}

// dL/dt along the flow by the chain rule: dp - (d_{dq} R) xi - R dxi.
AlgebraElement lax_time_derivative(const DynamicalRMatrix& r,
                                   const PhasePoint& point,
                                   const PhaseTangent& tangent) {
  const MatrixXd rm = r.evaluate(point.q);
  return tangent.dp - r.derivative(point.q, tangent.dq) * point.xi -
         rm * tangent.dxi;
}

MonitorRow make_monitor(const DynamicalRMatrix& r, const PhasePoint& point,
                        double t, int kmax, const Eigen::VectorXcd& spectrum0) {
  const AlgebraModel& model = r.model();
  MonitorRow row;
  row.t = t;
  row.energy = hamiltonian(r, point);
  const AlgebraElement l_elem = quasi_lax(r, point);
  row.invariants = invariant_functions(model, l_elem, kmax);
  row.chi_norm = model.project_k(point.xi).norm();
  row.lax_residual = lax_residual(r, point);
  row.casimirs = invariant_functions(model, point.xi, kmax);
  const Eigen::VectorXcd spec = sorted_spectrum(model, l_elem);
  row.spectral_drift = (spec - spectrum0).cwiseAbs().maxCoeff();
  return row;
}

}  // namespace

PhaseTangent vector_field(const DynamicalRMatrix& r, const PhasePoint& point) {
  if (!is_constrained(r.model(), point))
    throw std::invalid_argument("vector_field requires xi_K = 0");
  return raw_field(r, point);
}

double lax_residual(const DynamicalRMatrix& r, const PhasePoint& point) {
  const PhaseTangent tangent = raw_field(r, point);
  const AlgebraElement dl = lax_time_derivative(r, point, tangent);
  const MatrixXd rm = r.evaluate(point.q);
  const AlgebraElement l_elem = point.p - rm * point.xi;
  const AlgebraElement target =
      r.model().algebra.bracket(rm * l_elem, l_elem);
  return (dl - target).norm();
}

PhaseTangent reconstruct_from_lax(const DynamicalRMatrix& r,
                                  const PhasePoint& point) {
  const AlgebraModel& model = r.model();
  const int dim = model.dim();
  const int rank = model.rank();
  const MatrixXd rm = r.evaluate(point.q);
  const AlgebraElement l_elem = quasi_lax(r, point);
  const AlgebraElement commutator =
      model.algebra.bracket(rm * l_elem, l_elem);

  PhaseTangent out;
  out.dq = model.project_k(l_elem);
  out.dp = model.project_k(commutator);
  // Kperp part: [RL, L]_perp = -(d_p R) xi - R dxi_perp.
  const AlgebraElement rhs = model.project_kperp(commutator) +
                             r.derivative(point.q, out.dq) * point.xi;
  const MatrixXd r_perp = rm.block(rank, rank, dim - rank, dim - rank);
  out.dxi = AlgebraElement::Zero(dim);
  out.dxi.tail(dim - rank) =
      -Eigen::PartialPivLU<MatrixXd>(r_perp).solve(rhs.tail(dim - rank));
  return out;
}

Trajectory integrate(const DynamicalRMatrix& r, const PhasePoint& start,
                     const IntegratorConfig& config, int kmax) {
  if (config.step <= 0.0 || config.t_end <= 0.0 || config.step > config.t_end)
    throw std::invalid_argument("integrator requires 0 < step <= t_end");
  if (config.method != "rk4")
    throw std::invalid_argument("unsupported integrator method '" +
                                config.method + "'");
  if (!is_constrained(r.model(), start))
    throw std::invalid_argument("initial point must satisfy xi_K = 0");
  if (!r.in_domain(start.q))
    throw DomainError("initial base point outside the r-matrix domain");

  const AlgebraModel& model = r.model();
  const Eigen::VectorXcd spectrum0 =
      sorted_spectrum(model, quasi_lax(r, start));

  Trajectory traj;
  traj.kmax = kmax;
  traj.times.push_back(0.0);
  traj.states.push_back(start);
  traj.monitors.push_back(make_monitor(r, start, 0.0, kmax, spectrum0));

  const long n_steps = std::lround(config.t_end / config.step);
  PhasePoint state = start;

  auto advance = [&](const PhasePoint& pt, const PhaseTangent& k, double h) {
    PhasePoint out = pt;
    out.q += h * k.dq;
    out.p += h * k.dp;
    out.xi += h * k.dxi;
    return out;
  };

  for (long step = 1; step <= n_steps; ++step) {
    const double h = config.step;
    try {
      const PhaseTangent k1 = raw_field(r, state);
      const PhaseTangent k2 = raw_field(r, advance(state, k1, 0.5 * h));
      const PhaseTangent k3 = raw_field(r, advance(state, k2, 0.5 * h));
      const PhaseTangent k4 = raw_field(r, advance(state, k3, h));
      PhasePoint next = state;
      next.q += (h / 6.0) * (k1.dq + 2.0 * (k2.dq + k3.dq) + k4.dq);
      next.p += (h / 6.0) * (k1.dp + 2.0 * (k2.dp + k3.dp) + k4.dp);
      next.xi += (h / 6.0) * (k1.dxi + 2.0 * (k2.dxi + k3.dxi) + k4.dxi);
      if (!next.q.allFinite() || !next.p.allFinite() || !next.xi.allFinite())
        throw DomainError("state blew up (collision)");
      if (!r.in_domain(next.q)) throw DomainError("base point left the domain");
      state = next;
    } catch (const DomainError&) {
      traj.exit_status = ExitStatus::kDomainExit;
      return traj;
    }
    const double t = step * config.step;
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.monitors.push_back(make_monitor(r, state, t, kmax, spectrum0));
  }
  return traj;
}

ConservationSummary conservation_report(const Trajectory& trajectory) {
  ConservationSummary s;
  s.exit_status = trajectory.exit_status;
  if (trajectory.monitors.empty()) return s;
  const MonitorRow& first = trajectory.monitors.front();
  s.invariant_drifts.assign(first.invariants.size(), 0.0);
  s.casimir_drifts.assign(first.casimirs.size(), 0.0);
  const double h0 = std::max(1.0, std::abs(first.energy));
  for (const MonitorRow& row : trajectory.monitors) {
    s.energy_rel_drift =
        std::max(s.energy_rel_drift, std::abs(row.energy - first.energy) / h0);
    for (size_t k = 0; k < row.invariants.size(); ++k)
      s.invariant_drifts[k] = std::max(
          s.invariant_drifts[k], std::abs(row.invariants[k] - first.invariants[k]));
    for (size_t k = 0; k < row.casimirs.size(); ++k)
      s.casimir_drifts[k] = std::max(s.casimir_drifts[k],
                                     std::abs(row.casimirs[k] - first.casimirs[k]));
    s.max_chi_norm = std::max(s.max_chi_norm, row.chi_norm);
    s.max_lax_residual = std::max(s.max_lax_residual, row.lax_residual);
    s.eigenvalue_drift = std::max(s.eigenvalue_drift, row.spectral_drift);
  }
  return s;
}

Eigen::VectorXcd sorted_spectrum(const AlgebraModel& model,
                                 const AlgebraElement& x) {
  const Eigen::MatrixXcd m = model.algebra.to_matrix(x);
  Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m, false)
                            .eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(),
            [](std::complex<double> a, std::complex<double> b) {
              return a.real() != b.real() ? a.real() < b.real()
                                          : a.imag() < b.imag();
            });
  return ev;
}

}  // namespace spincal
