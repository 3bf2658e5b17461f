#include "spincal/reduction.hpp"

#include <cmath>

namespace spincal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// (ad_q|_{Kperp&F})^{-1} applied to the Kperp&F part of v.
AlgebraElement cartan_inverse_shift(const AlgebraModel& model,
                                    const AlgebraElement& q,
                                    const AlgebraElement& v) {
  const auto& chain = model.chain;
  const int rank = chain.rank;
  const int nkf = chain.kperp_f_dim();
  const MatrixXd block =
      model.algebra.ad_matrix(q).block(rank, rank, nkf, nkf);
  const auto sv = block.jacobiSvd().singularValues();
  if (sv(sv.size() - 1) < 1e-12)
    throw DomainError("singular ad_q on Kperp & F");
  AlgebraElement out = AlgebraElement::Zero(model.dim());
  out.segment(rank, nkf) =
      Eigen::PartialPivLU<MatrixXd>(block).solve(v.segment(rank, nkf));
  return out;
}

// Invariant signature of xi under the Cartan torus: complex traces of words
// in xi and the diagonal unit projectors of the defining representation, up
// to four xi factors.
std::vector<std::complex<double>> gauge_signature(const AlgebraModel& model,
                                                  const AlgebraElement& xi) {
  const Eigen::MatrixXcd x = model.algebra.to_matrix(xi);
  const int n = static_cast<int>(x.rows());
  std::vector<std::complex<double>> sig;
  sig.reserve(n + n * n + n * n * n + n * n * n * n);
  // tr(e_i x) = x_ii
  for (int i = 0; i < n; ++i) sig.push_back(x(i, i));
  // tr(e_i x e_j x) = x_ij x_ji
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sig.push_back(x(i, j) * x(j, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        sig.push_back(x(i, j) * x(j, k) * x(k, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          sig.push_back(x(i, j) * x(j, k) * x(k, l) * x(l, i));
  return sig;
}

double signature_distance(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b) {
  double out = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace

GaugeSlicePoint solve_constraint(const AlgebraModel& model,
                                 const AlgebraElement& q,
                                 const AlgebraElement& p,
                                 const AlgebraElement& xi) {
  if (!model.supported_in_k(q, 1e-9) || !model.supported_in_k(p, 1e-9))
    throw std::invalid_argument("solve_constraint expects Cartan (q, p)");
  if (model.project_k(xi).norm() > 1e-9 * std::max(1.0, xi.norm()))
    throw std::invalid_argument("solve_constraint requires xi_K = 0");
  GaugeSlicePoint slice;
  slice.q = q;
  slice.p = p - cartan_inverse_shift(model, q, xi);
  slice.xi = xi;
  return slice;
}

GaugeSlicePoint map_m(const AlgebraModel& model, const PhasePoint& point) {
  return solve_constraint(model, point.q, point.p, point.xi);
}

PhasePoint map_m_inverse(const AlgebraModel& model, const GaugeSlicePoint& slice) {
  return PhasePoint{slice.q, model.project_k(slice.p), slice.xi};
}

double slice_constraint_residual(const AlgebraModel& model,
                                 const GaugeSlicePoint& slice) {
  const PhasePoint as_point{slice.q, slice.p, slice.xi};
  return momentum_map(model, as_point, RMatrixKind::kNonAbelian).norm();
}

MatchResult verify_quasi_lax_match(const DynamicalRMatrix& r_f,
                                   const DynamicalRMatrix& r_k,
                                   const PhasePoint& point) {
  const AlgebraModel& model = r_k.model();
  const GaugeSlicePoint slice = map_m(model, point);
  const AlgebraElement l_f = slice.p - r_f.evaluate(slice.q) * slice.xi;
  const AlgebraElement l_k = quasi_lax(r_k, point);
  MatchResult out;
  out.quasi_lax_residual = (l_f - l_k).norm();
  out.hamiltonian_residual =
      std::abs(0.5 * model.algebra.bilinear(l_f, l_f) -
               0.5 * model.algebra.bilinear(l_k, l_k));
  return out;
}

double two_form_match(const AlgebraModel& model, const PhasePoint& point,
                      const SliceTangent& u, const SliceTangent& v) {
  const LieAlgebra& g = model.algebra;
  for (const SliceTangent* t : {&u, &v}) {
    if (!model.supported_in_k(t->dq, 1e-9) || !model.supported_in_k(t->dp, 1e-9))
      throw std::invalid_argument("tangent (dq, dp) must lie in K");
    const AlgebraElement leg = g.bracket(t->x, point.xi);
    if (model.project_k(leg).norm() > 1e-8 * std::max(1.0, leg.norm()))
      throw std::invalid_argument(
          "orbit leg is not tangent to the constraint surface");
  }

  // Pushforward of the momentum component of m along the curve
  // (q + s dq, p + s dp, Ad_{exp(s x)} xi), by central differences.
  auto momentum_leg = [&](const SliceTangent& t) {
    const double h = 1e-5;
    auto at = [&](double s) {
      const AlgebraElement q_s = point.q + s * t.dq;
      const AlgebraElement p_s = point.p + s * t.dp;
      const AlgebraElement xi_s = g.exp_ad(s * t.x) * point.xi;
      return AlgebraElement(p_s - cartan_inverse_shift(model, q_s, xi_s));
    };
    return AlgebraElement((at(h) - at(-h)) / (2.0 * h));
  };

  const AlgebraElement dp_f_u = momentum_leg(u);
  const AlgebraElement dp_f_v = momentum_leg(v);
  const double orbit_term =
      g.bilinear(point.xi, g.bracket(u.x, v.x));  // same leg on both sides

  const double omega_f =
      g.bilinear(dp_f_u, v.dq) - g.bilinear(dp_f_v, u.dq) + orbit_term;
  const double omega_k =
      g.bilinear(u.dp, v.dq) - g.bilinear(v.dp, u.dq) + orbit_term;
  return std::abs(omega_f - omega_k);
}

std::optional<WeylElement> weyl_identify(const AlgebraModel& model,
                                         const PhasePoint& a,
                                         const PhasePoint& b, double tol) {
  if (!is_constrained(model, a) || !is_constrained(model, b))
    throw std::invalid_argument("weyl_identify expects constrained points");
  const double scale =
      std::max({1.0, a.q.norm(), a.p.norm(), a.xi.norm()});
  const auto sig_b = gauge_signature(model, b.xi);
  double sig_scale = 1.0;
  for (const auto& s : sig_b) sig_scale = std::max(sig_scale, std::abs(s));

  for (const WeylElement& w : weyl_group(model)) {
    const MatrixXd action = w.g_action(model);
    if ((action * a.q - b.q).norm() > tol * scale) continue;
    if ((action * a.p - b.p).norm() > tol * scale) continue;
    const auto sig_wa = gauge_signature(model, action * a.xi);
    if (signature_distance(sig_wa, sig_b) <= tol * sig_scale) return w;
  }
  return std::nullopt;
}

PhasePoint weyl_transport(const AlgebraModel& model, const WeylElement& w,
                          const PhasePoint& point) {
  const MatrixXd action = w.g_action(model);
  return PhasePoint{action * point.q, action * point.p, action * point.xi};
}

}  // namespace spincal
