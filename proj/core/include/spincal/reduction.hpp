// reduction.hpp -- the bridge between the non-Abelian construction on F and
// the Abelian one on K: the partial gauge slice, the matching map m, the
// symplectic-form and quasi-Lax comparisons, and the residual Weyl symmetry.

#pragma once

#include "spincal/cartan.hpp"
#include "spincal/dynamics.hpp"
#include "spincal/phase.hpp"

#include <optional>

namespace spincal {

// Point of the partial gauge slice: q in the Cartan domain, p in F solving
// [q, p] + xi_F = 0, xi in g.
struct GaugeSlicePoint {
  AlgebraElement q;
  AlgebraElement p;   // F-valued momentum
  AlgebraElement xi;
};

// Unique constraint solution p_F = p - (ad_q|_{Kperp&F})^{-1} xi_{Kperp&F}
// over a Cartan pair (q, p) with xi_K = 0.  Throws std::invalid_argument on
// xi_K != 0, DomainError when ad_q is singular on Kperp & F.
GaugeSlicePoint solve_constraint(const AlgebraModel& model,
                                 const AlgebraElement& q,
                                 const AlgebraElement& p,
                                 const AlgebraElement& xi);

// The K-equivariant diffeomorphism m from the Abelian constraint surface
// onto the slice, and its inverse (projection of the momentum back to K).
GaugeSlicePoint map_m(const AlgebraModel& model, const PhasePoint& point);
PhasePoint map_m_inverse(const AlgebraModel& model, const GaugeSlicePoint& slice);

// ||chi_F|| at a slice point.
double slice_constraint_residual(const AlgebraModel& model,
                                 const GaugeSlicePoint& slice);

struct MatchResult {
  double quasi_lax_residual = 0.0;
  double hamiltonian_residual = 0.0;
};

// Compares the non-Abelian quasi-Lax operator and Hamiltonian through m with
// their Abelian counterparts at an Abelian-constrained point.
MatchResult verify_quasi_lax_match(const DynamicalRMatrix& r_f,
                                   const DynamicalRMatrix& r_k,
                                   const PhasePoint& point);

// Tangent vector to the Abelian constraint surface: (dq, dp) in K and an
// orbit direction x with xi-leg [x, xi] (tangency requires P_K [x, xi] = 0).
struct SliceTangent {
  AlgebraElement dq, dp, x;
};

// | Omega_F(m_* u, m_* v) - Omega_K(u, v) | with the pushforward m_* taken
// by central differences along curves through the point (h = 1e-5).
double two_form_match(const AlgebraModel& model, const PhasePoint& point,
                      const SliceTangent& u, const SliceTangent& v);

// Searches W for an element mapping one constrained point onto the other up
// to K-gauge; gauge matching of xi is decided by a finite invariant
// signature (traces of words in xi and the diagonal projectors, length <= 4).
std::optional<WeylElement> weyl_identify(const AlgebraModel& model,
                                         const PhasePoint& a,
                                         const PhasePoint& b,
                                         double tol = 1e-6);

// Weyl action on a full phase point (conjugation of q, p and xi).
PhasePoint weyl_transport(const AlgebraModel& model, const WeylElement& w,
                          const PhasePoint& point);

}  // namespace spincal
