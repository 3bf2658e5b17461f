// phase.hpp -- phase-space model over a catalog algebra: points (q, p, xi),
// the quasi-Lax operator L = p - R(q) xi, the momentum map, Poisson-bracket
// evaluation on gradient triples, and the residuals certifying the bracket
// conventions.
//
// xi-coordinates are B-coordinates xi_a = B(xi, T^a); the Lie-Poisson sign is
// {xi_a, xi_b}(xi) = B(xi, [T^a, T^b]).

#pragma once

#include "spincal/rmatrix.hpp"

namespace spincal {

struct PhasePoint {
  AlgebraElement q;   // in K (Abelian kind) or F (non-Abelian kind)
  AlgebraElement p;   // in K (resp. F)
  AlgebraElement xi;  // in g, identified with g* through B
};

// Coadjoint-orbit seed for leaf sampling and Casimir drift monitoring.
struct OrbitSeed {
  AlgebraElement xi0;
  std::vector<double> casimirs;  // Re tr(xi^k), k = 2..kmax
};

// B-gradients of a scalar observable with respect to (q, p, xi); dq and dp
// are supported in the base subalgebra, dxi is a full g-vector.
struct PhaseGradient {
  AlgebraElement dq, dp, dxi;
};

// L(q, p, xi) = p - R(q) xi.
AlgebraElement quasi_lax(const DynamicalRMatrix& r, const PhasePoint& point);

// Momentum map generating the base-group action: xi_K for the Abelian kind,
// [Q, P] + xi_F for the non-Abelian one.
AlgebraElement momentum_map(const AlgebraModel& model, const PhasePoint& point,
                            RMatrixKind kind);

// {f, g} = B(df/dq, dg/dp) - B(dg/dq, df/dp) + B(xi, [df/dxi, dg/dxi]).
double poisson_bracket(const AlgebraModel& model, const PhaseGradient& f,
                       const PhaseGradient& g, const PhasePoint& point);

// Componentwise residual of the quasi-Lax bracket identity
// {L_a, L_b} - ([r, L_1 + L_2] - grad_chi r)_{ab}; vanishes for a valid
// dynamical r-matrix at every admissible point, constrained or not.
Eigen::MatrixXd prop1_residual(const DynamicalRMatrix& r, const PhasePoint& point);

// Residual of {chi_i, chi_j} = B(chi, [T_i, T_j]) over base-subalgebra pairs.
Eigen::MatrixXd first_class_residual(const AlgebraModel& model,
                                     const PhasePoint& point, RMatrixKind kind);

// H = B(L, L)/2, and its constrained form B(p,p)/2 + B(R xi_perp, R xi_perp)/2
// (requires xi_K = 0; the two forms agree on the constraint surface).
double hamiltonian(const DynamicalRMatrix& r, const PhasePoint& point);
double constrained_hamiltonian(const DynamicalRMatrix& r, const PhasePoint& point);

// h_k = Re tr(L^k) in the defining representation, k = 2..kmax.
std::vector<double> invariant_functions(const AlgebraModel& model,
                                        const AlgebraElement& l_elem, int kmax);

// B-gradient of h_k at L: the algebra projection of k L^{k-1}.
AlgebraElement invariant_gradient(const AlgebraModel& model,
                                  const AlgebraElement& l_elem, int k);

// Gradients of the observable G(L(q,p,xi)) given w = (grad G)(L).
PhaseGradient observable_gradient(const DynamicalRMatrix& r,
                                  const PhasePoint& point,
                                  const AlgebraElement& w);

// (q, p, xi) -> (q, p, e^{ad_kappa} xi) for kappa in K; requires xi_K = 0.
PhasePoint gauge_transform(const AlgebraModel& model, const PhasePoint& point,
                           const AlgebraElement& kappa);

// Orbit sweep: Ad_{exp(eta)} xi0 stays exactly on the coadjoint leaf.
AlgebraElement orbit_point(const AlgebraModel& model, const AlgebraElement& xi0,
                           const AlgebraElement& eta);
OrbitSeed make_orbit_seed(const AlgebraModel& model, const AlgebraElement& xi0,
                          int kmax);

// Enforces the first-class constraint chi = 0 in the Abelian kind.
bool is_constrained(const AlgebraModel& model, const PhasePoint& point,
                    double tol = 1e-9);

}  // namespace spincal
