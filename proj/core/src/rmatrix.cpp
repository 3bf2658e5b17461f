#include "spincal/rmatrix.hpp"

#include <cmath>

namespace spincal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Invertibility margin of a unit-scale operator block, 1/sigma_min = the
// norm of the inverse.  The relative condition number sigma_max/sigma_min
// misses a uniformly tiny block (su root angle at 2 pi), and penalizing
// sigma_max would reject the hyperbolic far field where e^{-ad_q} grows but
// the inverse stays tame.
double condition_number(const MatrixXd& m) {
  const auto sv = m.jacobiSvd().singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / smin;
}

}  // namespace

namespace {

// A non-finite base point means the caller's flow blew up (collision); that
// is a domain exit, not an API misuse.
void ensure_finite_base(const AlgebraElement& q) {
  if (!q.allFinite())
    throw DomainError("non-finite base point (domain exit)");
}

}  // namespace

Eigen::MatrixXd b_adjoint(const AlgebraModel& model, const Eigen::MatrixXd& op) {
  const MatrixXd& gram = model.algebra.gram();
  return Eigen::PartialPivLU<MatrixXd>(gram).solve(op.transpose() * gram);
}

DynamicalRMatrix DynamicalRMatrix::alekseev_meinrenken(
    ModelPtr model, const std::string& theta_label) {
  DynamicalRMatrix r;
  r.form_ = Form::kAlekseevMeinrenken;
  r.kind_ = RMatrixKind::kAbelian;
  r.model_ = std::move(model);
  const auto& autos = r.model_->automorphisms;
  r.theta_index_ = -1;
  for (size_t i = 0; i < autos.size(); ++i)
    if (autos[i].label == theta_label) r.theta_index_ = static_cast<int>(i);
  if (r.theta_index_ < 0)
    throw std::invalid_argument("unknown automorphism '" + theta_label + "'");
  if (r.model_->algebra.descriptor().is_product() &&
      autos[r.theta_index_].is_identity())
    throw std::invalid_argument(
        "product algebras require the cyclic automorphism: the Cartan of the "
        "fixed-point subalgebra is not a Cartan of g");
  r.perturbation_op_ = MatrixXd::Zero(r.model_->dim(), r.model_->dim());
  return r;
}

const Automorphism& DynamicalRMatrix::theta() const {
  return model_->automorphisms[theta_index_];
}

DynamicalRMatrix DynamicalRMatrix::perturbed(double eps) const {
  if (form_ != Form::kAlekseevMeinrenken)
    throw std::invalid_argument("perturbed() applies to the base family only");
  DynamicalRMatrix r = *this;
  r.perturbation_ = eps;
  const auto& chain = model_->chain;
  const int i = chain.kperp_f_indices.at(0);
  const int j = chain.kperp_f_indices.at(1);
  const auto& gram = model_->algebra.gram();
  r.perturbation_op_ = MatrixXd::Zero(model_->dim(), model_->dim());
  if (std::abs(gram(i, i)) < 1e-12) {
    // Split root pair, B(e_i, e_i) = 0, B(e_i, e_j) != 0: stretch by +-eps.
    r.perturbation_op_(i, i) = eps;
    r.perturbation_op_(j, j) = -eps;
  } else {
    // Compact root plane, B(e_i, e_i) = B(e_j, e_j): infinitesimal rotation.
    r.perturbation_op_(j, i) = eps;
    r.perturbation_op_(i, j) = -eps;
  }
  return r;
}

Eigen::MatrixXd DynamicalRMatrix::kperp_block(const AlgebraElement& q) const {
  const int dim = model_->dim();
  const int rank = model_->rank();
  const MatrixXd a_full = MatrixXd::Identity(dim, dim) -
                          theta().inverse * model_->algebra.exp_ad(-q);
  return a_full.block(rank, rank, dim - rank, dim - rank);
}

Eigen::MatrixXd DynamicalRMatrix::dirac_term(const AlgebraElement& q) const {
  const auto& chain = model_->chain;
  const int rank = chain.rank;
  const int nkf = chain.kperp_f_dim();
  const MatrixXd ad_q = model_->algebra.ad_matrix(q);
  const MatrixXd block = ad_q.block(rank, rank, nkf, nkf);
  if (condition_number(block) > kConditionLimit)
    throw DomainError("singular ad_q on Kperp & F");
  MatrixXd out = MatrixXd::Zero(model_->dim(), model_->dim());
  out.block(rank, rank, nkf, nkf) =
      Eigen::PartialPivLU<MatrixXd>(block).solve(MatrixXd::Identity(nkf, nkf));
  return out;
}

Eigen::MatrixXd DynamicalRMatrix::evaluate_am(const AlgebraElement& q) const {
  ensure_finite_base(q);
  if (!model_->supported_in_k(q, 1e-9))
    throw std::invalid_argument("Abelian r-matrix base point must lie in K");
  const int dim = model_->dim();
  const int rank = model_->rank();
  const MatrixXd block = kperp_block(q);
  if (condition_number(block) > kConditionLimit)
    throw DomainError("base point outside the r-matrix domain: A(q) singular");
  MatrixXd r = MatrixXd::Zero(dim, dim);
  r.topLeftCorner(rank, rank) = 0.5 * MatrixXd::Identity(rank, rank);
  r.block(rank, rank, dim - rank, dim - rank) =
      Eigen::PartialPivLU<MatrixXd>(block).solve(
          MatrixXd::Identity(dim - rank, dim - rank));
  if (perturbation_ != 0.0) r += perturbation_op_;
  return r;
}

Eigen::MatrixXd DynamicalRMatrix::evaluate_extension(
    const AlgebraElement& big_q) const {
  ensure_finite_base(big_q);
  if (!model_->supported_in_f(big_q, 1e-9))
    throw std::invalid_argument("non-Abelian r-matrix base point must lie in F");
  const CartanForm cf = diagonalize_to_cartan(*model_, big_q);
  const MatrixXd r_at_cartan = inner_->evaluate(cf.q) - dirac_term(cf.q);
  return cf.f.adjoint_inverse * r_at_cartan * cf.f.adjoint;
}

Eigen::MatrixXd DynamicalRMatrix::evaluate_reduction(
    const AlgebraElement& q) const {
  ensure_finite_base(q);
  if (!model_->supported_in_k(q, 1e-9))
    throw std::invalid_argument("Abelian r-matrix base point must lie in K");
  return inner_->evaluate(q) + dirac_term(q);
}

Eigen::MatrixXd DynamicalRMatrix::evaluate(const AlgebraElement& base) const {
  switch (form_) {
    case Form::kAlekseevMeinrenken: return evaluate_am(base);
    case Form::kExtension: return evaluate_extension(base);
    case Form::kReduction: return evaluate_reduction(base);
  }
  throw std::logic_error("unreachable");
}

double DynamicalRMatrix::domain_condition(const AlgebraElement& base) const {
  ensure_finite_base(base);
  AlgebraElement q = base;
  if (kind_ == RMatrixKind::kNonAbelian && !model_->supported_in_k(base, 1e-9))
    q = diagonalize_to_cartan(*model_, base).q;
  return condition_number(kperp_block(q));
}

bool DynamicalRMatrix::in_domain(const AlgebraElement& base) const {
  const bool needs_regular = form_ != Form::kAlekseevMeinrenken;
  try {
    if (kind_ == RMatrixKind::kAbelian) {
      if (!model_->supported_in_k(base, 1e-9)) return false;
      if (needs_regular && regularity_gap(*model_, base) <= 1e-8) return false;
      return domain_condition(base) < kConditionLimit;
    }
    if (!model_->supported_in_f(base, 1e-9)) return false;
    const CartanForm cf = diagonalize_to_cartan(*model_, base);
    return domain_condition(cf.q) < kConditionLimit;
  } catch (const DomainError&) {
    return false;
  }
}

Eigen::MatrixXd DynamicalRMatrix::derivative_exact(const AlgebraElement& q,
                                                   const AlgebraElement& v) const {
  const int dim = model_->dim();
  const int rank = model_->rank();
  switch (form_) {
    case Form::kAlekseevMeinrenken: {
      // dA^{-1} = -A^{-1} (theta^{-1} ad_v e^{-ad_q}) A^{-1}; ad_q and ad_v
      // commute on the Abelian Cartan, so this is the exact derivative.
      const MatrixXd block = kperp_block(q);
      if (condition_number(block) > kConditionLimit)
        throw DomainError("base point outside the r-matrix domain: A(q) singular");
      const MatrixXd ainv = Eigen::PartialPivLU<MatrixXd>(block).solve(
          MatrixXd::Identity(dim - rank, dim - rank));
      const MatrixXd da_full = theta().inverse * model_->algebra.ad_matrix(v) *
                               model_->algebra.exp_ad(-q);
      const MatrixXd da = da_full.block(rank, rank, dim - rank, dim - rank);
      MatrixXd out = MatrixXd::Zero(dim, dim);
      out.block(rank, rank, dim - rank, dim - rank) = -ainv * da * ainv;
      return out;
    }
    case Form::kExtension: {
      const MatrixXd s = dirac_term(q);
      const MatrixXd ds = -s * model_->algebra.ad_matrix(v) * s;
      return inner_->derivative_exact(q, v) - ds;
    }
    case Form::kReduction: {
      const MatrixXd s = dirac_term(q);
      const MatrixXd ds = -s * model_->algebra.ad_matrix(v) * s;
      return inner_->derivative_exact(q, v) + ds;
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::MatrixXd DynamicalRMatrix::derivative(const AlgebraElement& base,
                                             const AlgebraElement& direction) const {
  if (model_->supported_in_k(base, 1e-9) && model_->supported_in_k(direction, 1e-9))
    return derivative_exact(base, direction);
  return derivative_fd(base, direction);
}

Eigen::MatrixXd DynamicalRMatrix::derivative_fd(const AlgebraElement& base,
                                                const AlgebraElement& direction,
                                                double step) const {
  auto central = [&](double h) {
    return MatrixXd(
        (evaluate(base + h * direction) - evaluate(base - h * direction)) /
        (2.0 * h));
  };
  const MatrixXd d1 = central(step);
  const MatrixXd d2 = central(step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

DynamicalRMatrix nonabelian_extend(const DynamicalRMatrix& r_k) {
  if (r_k.kind_ != RMatrixKind::kAbelian)
    throw std::invalid_argument("nonabelian_extend expects an Abelian r-matrix");
  DynamicalRMatrix r;
  r.form_ = DynamicalRMatrix::Form::kExtension;
  r.kind_ = RMatrixKind::kNonAbelian;
  r.model_ = r_k.model_;
  r.theta_index_ = r_k.theta_index_;
  r.perturbation_op_ = Eigen::MatrixXd::Zero(r.model_->dim(), r.model_->dim());
  r.inner_ = std::make_shared<const DynamicalRMatrix>(r_k);
  return r;
}

DynamicalRMatrix dirac_reduce(const DynamicalRMatrix& r_f) {
  if (r_f.kind_ != RMatrixKind::kNonAbelian)
    throw std::invalid_argument("dirac_reduce expects a non-Abelian r-matrix");
  DynamicalRMatrix r;
  r.form_ = DynamicalRMatrix::Form::kReduction;
  r.kind_ = RMatrixKind::kAbelian;
  r.model_ = r_f.model_;
  r.theta_index_ = r_f.theta_index_;
  r.perturbation_op_ = Eigen::MatrixXd::Zero(r.model_->dim(), r.model_->dim());
  r.inner_ = std::make_shared<const DynamicalRMatrix>(r_f);
  return r;
}

AlgebraElement cdybe_residual(const DynamicalRMatrix& r, const AlgebraElement& q,
                              const AlgebraElement& x, const AlgebraElement& y) {
  const AlgebraModel& model = r.model();
  const LieAlgebra& g = model.algebra;
  const int dim = g.dim();
  const bool abelian = r.kind() == RMatrixKind::kAbelian;
  const int base_dim = abelian ? model.chain.rank : model.chain.dim_f;

  const MatrixXd rm = r.evaluate(q);
  const MatrixXd ra = rm - 0.5 * MatrixXd::Identity(dim, dim);

  const AlgebraElement ra_x = ra * x;
  const AlgebraElement ra_y = ra * y;

  auto base_project = [&](const AlgebraElement& v) {
    return abelian ? model.project_k(v) : model.project_f(v);
  };

  // [R^a X, R^a Y] - R^a(ad_{R^aX} Y - ad_{R^aY} X); ad# realized as ad under
  // the B-identification.
  AlgebraElement res = g.bracket(ra_x, ra_y);
  res -= ra * (g.bracket(ra_x, y) - g.bracket(ra_y, x));

  // grad_{Y_base} R^a X - grad_{X_base} R^a Y.
  res += r.derivative(q, base_project(y)) * x;
  res -= r.derivative(q, base_project(x)) * y;

  // <X, (grad R^a) Y>: base-valued B-gradient of B(X, R^a(q) Y).
  VectorXd partials(base_dim);
  for (int i = 0; i < base_dim; ++i) {
    AlgebraElement e = AlgebraElement::Zero(dim);
    e[i] = 1.0;
    partials[i] = g.bilinear(x, r.derivative(q, e) * y);
  }
  const MatrixXd gbase = g.gram().topLeftCorner(base_dim, base_dim);
  const VectorXd raised = Eigen::PartialPivLU<MatrixXd>(gbase).solve(partials);
  res.head(base_dim) += raised;

  // Symmetric part contribution [R^s X, R^s Y] with R^s = id/2.
  res += 0.25 * g.bracket(x, y);
  return res;
}

Eigen::MatrixXd equivariance_residual(const DynamicalRMatrix& r,
                                      const AlgebraElement& q,
                                      const AlgebraElement& x) {
  const AlgebraModel& model = r.model();
  if (r.kind() == RMatrixKind::kAbelian) {
    if (!model.supported_in_k(x, 1e-9))
      throw std::invalid_argument("equivariance direction must lie in K");
  } else if (!model.supported_in_f(x, 1e-9)) {
    throw std::invalid_argument("equivariance direction must lie in F");
  }
  const MatrixXd rm = r.evaluate(q);
  const MatrixXd ad_x = model.algebra.ad_matrix(x);
  const AlgebraElement flow = model.algebra.bracket(x, q);
  MatrixXd grad;
  if (flow.norm() == 0.0)
    grad = MatrixXd::Zero(model.dim(), model.dim());
  else
    grad = r.derivative(q, flow);
  return grad - (ad_x * rm - rm * ad_x);
}

}  // namespace spincal
