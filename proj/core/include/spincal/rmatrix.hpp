// rmatrix.hpp -- dynamical r-matrices as operator-valued maps on the Cartan
// domain, with the quasi-triangular normalization R + R* = id (B-adjoint).
//
// The Abelian family is
//     R(q)|_K = 1/2 id_K,   R(q)|_Kperp = (1 - theta^{-1} e^{-ad_q}|_Kperp)^{-1},
// its non-Abelian extension lives on the F-orbit sweep of the Cartan domain,
// and dirac_reduce inverts the extension by adding (ad_q|_{Kperp&F})^{-1}.

#pragma once

#include "spincal/cartan.hpp"
#include "spincal/lie_algebra.hpp"

namespace spincal {

enum class RMatrixKind { kAbelian, kNonAbelian };

class DynamicalRMatrix {
 public:
  // Condition-number threshold standing in for invertibility of
  // A(q) = id - theta^{-1} e^{-ad_q} on Kperp.
  static constexpr double kConditionLimit = 1e8;

  static DynamicalRMatrix alekseev_meinrenken(ModelPtr model,
                                              const std::string& theta_label);

  RMatrixKind kind() const { return kind_; }
  const AlgebraModel& model() const { return *model_; }
  ModelPtr model_ptr() const { return model_; }
  const Automorphism& theta() const;
  double perturbation() const { return perturbation_; }

  // Antisymmetric rank-two perturbation on the first root plane, used as a
  // negative control: breaks the CDYBE while keeping R + R* = id, the
  // K/Kperp block structure and K-equivariance intact.
  DynamicalRMatrix perturbed(double eps) const;

  bool in_domain(const AlgebraElement& base) const;
  // Invertibility margin of A(q) on Kperp: the norm of the inverse, infinite
  // when singular.  Doubles as a bound on the operator norm of R on Kperp.
  double domain_condition(const AlgebraElement& base) const;

  // Dense operator on coefficient vectors.  Throws DomainError outside the
  // domain, std::invalid_argument when the base point is off the base
  // subalgebra (K for the Abelian kind, F for the non-Abelian one).
  Eigen::MatrixXd evaluate(const AlgebraElement& base) const;

  // Directional derivative of the operator map.  Exact for Abelian base
  // points and Cartan directions; central finite differences (h = 1e-5, one
  // Richardson step) otherwise.
  Eigen::MatrixXd derivative(const AlgebraElement& base,
                             const AlgebraElement& direction) const;

  // Finite-difference derivative, available at any admissible base point as
  // a cross-check of the exact path.
  Eigen::MatrixXd derivative_fd(const AlgebraElement& base,
                                const AlgebraElement& direction,
                                double step = 1e-5) const;

  friend DynamicalRMatrix nonabelian_extend(const DynamicalRMatrix& r_k);
  friend DynamicalRMatrix dirac_reduce(const DynamicalRMatrix& r_f);

 private:
  enum class Form { kAlekseevMeinrenken, kExtension, kReduction };

  DynamicalRMatrix() = default;

  Eigen::MatrixXd evaluate_am(const AlgebraElement& q) const;
  Eigen::MatrixXd evaluate_extension(const AlgebraElement& big_q) const;
  Eigen::MatrixXd evaluate_reduction(const AlgebraElement& q) const;
  Eigen::MatrixXd derivative_exact(const AlgebraElement& q,
                                   const AlgebraElement& v) const;
  // A(q) restricted to the Kperp block of the adapted basis.
  Eigen::MatrixXd kperp_block(const AlgebraElement& q) const;
  // (ad_q|_{Kperp&F})^{-1} embedded as an operator on g.
  Eigen::MatrixXd dirac_term(const AlgebraElement& q) const;

  Form form_ = Form::kAlekseevMeinrenken;
  RMatrixKind kind_ = RMatrixKind::kAbelian;
  ModelPtr model_;
  int theta_index_ = 0;
  double perturbation_ = 0.0;
  Eigen::MatrixXd perturbation_op_;  // dim x dim, zero when unperturbed
  std::shared_ptr<const DynamicalRMatrix> inner_;
};

DynamicalRMatrix nonabelian_extend(const DynamicalRMatrix& r_k);
DynamicalRMatrix dirac_reduce(const DynamicalRMatrix& r_f);

// g-valued residual of the dynamical Yang-Baxter identity at base point q
// against directions X, Y (identified with g* through B).  Vanishes for a
// valid dynamical r-matrix.
AlgebraElement cdybe_residual(const DynamicalRMatrix& r, const AlgebraElement& q,
                              const AlgebraElement& x, const AlgebraElement& y);

// Operator-valued equivariance residual  grad_{[x,q]} R(q) - [ad_x, R(q)].
// x must lie in K (Abelian kind) or F (non-Abelian kind).
Eigen::MatrixXd equivariance_residual(const DynamicalRMatrix& r,
                                      const AlgebraElement& q,
                                      const AlgebraElement& x);

// B-adjoint of an operator: G^{-1} A^T G.
Eigen::MatrixXd b_adjoint(const AlgebraModel& model, const Eigen::MatrixXd& op);

}  // namespace spincal
