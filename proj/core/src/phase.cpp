#include "spincal/phase.hpp"

#include <cmath>

namespace spincal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// S_{cd} = B(xi, [T^c, T^d]), the Lie-Poisson kernel at xi.
MatrixXd lie_poisson_kernel(const AlgebraModel& model, const AlgebraElement& xi) {
  const int dim = model.dim();
  const VectorXd gxi = model.algebra.gram() * xi;
  MatrixXd s(dim, dim);
  for (int c = 0; c < dim; ++c)
    s.row(c) = (model.algebra.ad_generator(c).transpose() * gxi).transpose();
  return s;
}

int base_dimension(const AlgebraModel& model, RMatrixKind kind) {
  return kind == RMatrixKind::kAbelian ? model.chain.rank : model.chain.dim_f;
}

}  // namespace

AlgebraElement quasi_lax(const DynamicalRMatrix& r, const PhasePoint& point) {
  return point.p - r.evaluate(point.q) * point.xi;
}

AlgebraElement momentum_map(const AlgebraModel& model, const PhasePoint& point,
                            RMatrixKind kind) {
  if (kind == RMatrixKind::kAbelian) return model.project_k(point.xi);
  return model.algebra.bracket(point.q, point.p) + model.project_f(point.xi);
}

double poisson_bracket(const AlgebraModel& model, const PhaseGradient& f,
                       const PhaseGradient& g, const PhasePoint& point) {
  const LieAlgebra& alg = model.algebra;
  double out = alg.bilinear(f.dq, g.dp) - alg.bilinear(g.dq, f.dp);
  out += alg.bilinear(point.xi, alg.bracket(f.dxi, g.dxi));
  return out;
}

Eigen::MatrixXd prop1_residual(const DynamicalRMatrix& r, const PhasePoint& point) {
  const AlgebraModel& model = r.model();
  const LieAlgebra& g = model.algebra;
  const int dim = g.dim();
  const int nb = base_dimension(model, r.kind());
  const MatrixXd& gram = g.gram();

  const MatrixXd rm = r.evaluate(point.q);
  const MatrixXd radj = b_adjoint(model, rm);
  const AlgebraElement l_elem = point.p - rm * point.xi;
  const MatrixXd ad_l = g.ad_matrix(l_elem);

  // grad_q L_a along each base direction, raised with the base gram block.
  MatrixXd partials(dim, nb);
  for (int i = 0; i < nb; ++i) {
    AlgebraElement e = AlgebraElement::Zero(dim);
    e[i] = 1.0;
    partials.col(i) = -(gram * (r.derivative(point.q, e) * point.xi));
  }
  const MatrixXd gbase = gram.topLeftCorner(nb, nb);
  const MatrixXd w_coords =
      Eigen::PartialPivLU<MatrixXd>(gbase).solve(partials.transpose()).transpose();

  // Canonical block: B(w_a, T^b) antisymmetrized.
  const MatrixXd m1 = w_coords * gram.topRows(nb);
  MatrixXd lhs = m1 - m1.transpose();

  // Lie-Poisson block with grad_xi L_a = -R^* T^a (column a of -radj).
  const MatrixXd s = lie_poisson_kernel(model, point.xi);
  lhs += radj.transpose() * s * radj;

  // [r, L_1 + L_2] - grad_chi r in the same component convention.
  const AlgebraElement chi = momentum_map(model, point, r.kind());
  MatrixXd rhs = -(gram * ad_l * rm);
  rhs -= (gram * ad_l * radj).transpose();
  rhs -= gram * r.derivative(point.q, chi);
  return lhs - rhs;
}

Eigen::MatrixXd first_class_residual(const AlgebraModel& model,
                                     const PhasePoint& point, RMatrixKind kind) {
  const LieAlgebra& g = model.algebra;
  const int dim = model.dim();
  const int nb = base_dimension(model, kind);
  const AlgebraElement chi = momentum_map(model, point, kind);
  MatrixXd res = MatrixXd::Zero(nb, nb);
  for (int i = 0; i < nb; ++i) {
    AlgebraElement ei = AlgebraElement::Zero(dim);
    ei[i] = 1.0;
    for (int j = i + 1; j < nb; ++j) {
      AlgebraElement ej = AlgebraElement::Zero(dim);
      ej[j] = 1.0;
      double pb;
      if (kind == RMatrixKind::kAbelian) {
        pb = g.bilinear(point.xi, g.bracket(ei, ej));
      } else {
        pb = g.bilinear(g.bracket(point.p, ei), g.bracket(ej, point.q)) -
             g.bilinear(g.bracket(point.p, ej), g.bracket(ei, point.q)) +
             g.bilinear(point.xi, g.bracket(ei, ej));
      }
      const double target = g.bilinear(chi, g.bracket(ei, ej));
      res(i, j) = pb - target;
      res(j, i) = -res(i, j);
    }
  }
  return res;
}

double hamiltonian(const DynamicalRMatrix& r, const PhasePoint& point) {
  const AlgebraElement l_elem = quasi_lax(r, point);
  return 0.5 * r.model().algebra.bilinear(l_elem, l_elem);
}

double constrained_hamiltonian(const DynamicalRMatrix& r, const PhasePoint& point) {
  const AlgebraModel& model = r.model();
  if (!is_constrained(model, point))
    throw std::invalid_argument(
        "constrained_hamiltonian requires xi_K = 0 (momentum constraint)");
  const AlgebraElement xi_perp = model.project_kperp(point.xi);
  const AlgebraElement rxi = r.evaluate(point.q) * xi_perp;
  return 0.5 * model.algebra.bilinear(point.p, point.p) +
         0.5 * model.algebra.bilinear(rxi, rxi);
}

std::vector<double> invariant_functions(const AlgebraModel& model,
                                        const AlgebraElement& l_elem, int kmax) {
  if (kmax < 2 || kmax > model.algebra.defining_size())
    throw std::invalid_argument("invariant_functions: kmax out of range");
  const Eigen::MatrixXcd l_mat = model.algebra.to_matrix(l_elem);
  std::vector<double> out;
  Eigen::MatrixXcd power = l_mat;
  for (int k = 2; k <= kmax; ++k) {
    power = power * l_mat;
    out.push_back(power.trace().real());
  }
  return out;
}

AlgebraElement invariant_gradient(const AlgebraModel& model,
                                  const AlgebraElement& l_elem, int k) {
  const Eigen::MatrixXcd l_mat = model.algebra.to_matrix(l_elem);
  Eigen::MatrixXcd power =
      Eigen::MatrixXcd::Identity(l_mat.rows(), l_mat.cols());
  for (int i = 0; i < k - 1; ++i) power = power * l_mat;
  return model.algebra.project_to_algebra(double(k) * power);
}

PhaseGradient observable_gradient(const DynamicalRMatrix& r,
                                  const PhasePoint& point,
                                  const AlgebraElement& w) {
  const AlgebraModel& model = r.model();
  const LieAlgebra& g = model.algebra;
  const int nb = base_dimension(model, r.kind());
  const int dim = model.dim();

  PhaseGradient grad;
  grad.dp = r.kind() == RMatrixKind::kAbelian ? model.project_k(w)
                                              : model.project_f(w);
  grad.dxi = -(b_adjoint(model, r.evaluate(point.q)) * w);

  VectorXd partials(nb);
  for (int i = 0; i < nb; ++i) {
    AlgebraElement e = AlgebraElement::Zero(dim);
    e[i] = 1.0;
    partials[i] = -g.bilinear(w, r.derivative(point.q, e) * point.xi);
  }
  const MatrixXd gbase = g.gram().topLeftCorner(nb, nb);
  grad.dq = AlgebraElement::Zero(dim);
  grad.dq.head(nb) = Eigen::PartialPivLU<MatrixXd>(gbase).solve(partials);
  return grad;
}

PhasePoint gauge_transform(const AlgebraModel& model, const PhasePoint& point,
                           const AlgebraElement& kappa) {
  if (!model.supported_in_k(kappa, 1e-9))
    throw std::invalid_argument("gauge parameter must lie in K");
  if (!is_constrained(model, point))
    throw std::invalid_argument("gauge_transform requires xi_K = 0");
  PhasePoint out = point;
  out.xi = model.algebra.exp_ad(kappa) * point.xi;
  return out;
}

AlgebraElement orbit_point(const AlgebraModel& model, const AlgebraElement& xi0,
                           const AlgebraElement& eta) {
  return model.algebra.exp_ad(eta) * xi0;
}

OrbitSeed make_orbit_seed(const AlgebraModel& model, const AlgebraElement& xi0,
                          int kmax) {
  OrbitSeed seed;
  seed.xi0 = xi0;
  seed.casimirs = invariant_functions(model, xi0, kmax);
  return seed;
}

bool is_constrained(const AlgebraModel& model, const PhasePoint& point,
                    double tol) {
  return model.project_k(point.xi).norm() <=
         tol * std::max(1.0, point.xi.norm());
}

}  // namespace spincal
