#include "spincal/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spincal {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kRegularityThreshold = 1e-8;

// Extracts the defining-representation matrix of the simple-factor part of
// an element of F (first block for products, the whole matrix otherwise).
MatrixXcd factor_matrix(const AlgebraModel& model, const AlgebraElement& x) {
  const MatrixXcd full = model.algebra.to_matrix(x);
  const int m = model.algebra.descriptor().n;
  return full.topLeftCorner(m, m);
}

GroupConjugation conjugation_from_defining(const AlgebraModel& model,
                                           const MatrixXcd& f_def) {
  GroupConjugation c;
  c.defining = f_def;
  const int dim = model.dim();
  const MatrixXcd f_inv = f_def.inverse();
  c.adjoint.resize(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const MatrixXcd img = f_def * model.algebra.basis_matrix(a) * f_inv;
    c.adjoint.col(a) = model.algebra.project_to_algebra(img);
  }
  c.adjoint_inverse = c.adjoint.inverse();
  return c;
}

// Replicates an m x m defining block over all product factors.
MatrixXcd replicate_blocks(const MatrixXcd& block, int copies) {
  const int m = static_cast<int>(block.rows());
  MatrixXcd out = MatrixXcd::Zero(m * copies, m * copies);
  for (int b = 0; b < copies; ++b) out.block(b * m, b * m, m, m) = block;
  return out;
}

}  // namespace

double regularity_gap(const AlgebraModel& model, const AlgebraElement& q_elem) {
  const MatrixXcd block = factor_matrix(model, q_elem);
  Eigen::ComplexEigenSolver<MatrixXcd> es(block, false);
  const auto& ev = es.eigenvalues();
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ev.size(); ++i)
    for (int j = i + 1; j < ev.size(); ++j)
      gap = std::min(gap, std::abs(ev[i] - ev[j]));
  return gap;
}

CartanForm diagonalize_to_cartan(const AlgebraModel& model,
                                 const AlgebraElement& q_elem) {
  if (!q_elem.allFinite())
    throw DomainError("non-finite element (domain exit)");
  if (!model.supported_in_f(q_elem, 1e-9))
    throw std::invalid_argument("diagonalize_to_cartan: element not in F");
  const CatalogDescriptor& desc = model.algebra.descriptor();
  const int m = desc.n;
  const int copies = desc.is_product() ? desc.copies : 1;
  const MatrixXcd block = factor_matrix(model, q_elem);

  MatrixXcd v;                    // eigenvectors, columns ordered by the chamber
  Eigen::VectorXcd diag(m);       // sorted eigenvalues

  if (desc.family == Family::kSpecialUnitary) {
    // q = -i Hm with Hm hermitian; chamber = decreasing imaginary parts.
    const MatrixXcd hm = std::complex<double>(0, 1) * block;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hm);
    if (es.info() != Eigen::Success)
      throw DomainError("diagonalize_to_cartan: eigensolver failed");
    VectorXd rho = es.eigenvalues();  // ascending; mu = -rho descending
    v = es.eigenvectors();
    for (int i = 0; i < m; ++i) diag[i] = std::complex<double>(0, -rho[i]);
  } else {
    Eigen::EigenSolver<MatrixXd> es(block.real());
    if (es.info() != Eigen::Success)
      throw DomainError("diagonalize_to_cartan: eigensolver failed");
    const Eigen::VectorXcd ev = es.eigenvalues();
    double scale = std::max(1.0, block.norm());
    for (int i = 0; i < m; ++i)
      if (std::abs(ev[i].imag()) > 1e-9 * scale)
        throw DomainError(
            "diagonalize_to_cartan: complex spectrum, not conjugate to the "
            "split Cartan");
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return ev[a].real() > ev[b].real(); });
    v.resize(m, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd col = es.eigenvectors().col(order[i]).real();
      v.col(i) = (col / col.norm()).cast<std::complex<double>>();
      diag[i] = ev[order[i]].real();
    }
  }

  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) gap = std::min(gap, std::abs(diag[i] - diag[j]));
  if (gap <= kRegularityThreshold)
    throw DomainError("diagonalize_to_cartan: degenerate spectrum, gap = " +
                      std::to_string(gap));

  // Ad_f Q = q with f = V^{-1} blockwise.
  const MatrixXcd f_def = replicate_blocks(v.inverse(), copies);
  CartanForm out;
  out.f = conjugation_from_defining(model, f_def);
  MatrixXcd q_mat = MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) q_mat(i, i) = diag[i];
  out.q = model.algebra.project_to_algebra(replicate_blocks(q_mat, copies));
  // Snap to the K slice (projection noise lives below 1e-13).
  out.q = model.project_k(out.q);
  return out;
}

WeylElement WeylElement::identity(int slots) {
  std::vector<int> p(slots);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(std::move(p));
}

bool WeylElement::is_identity() const {
  for (int i = 0; i < slots(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  std::vector<int> p(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) p[i] = other.perm_[perm_[i]];
  return WeylElement(std::move(p));
}

WeylElement WeylElement::inverse() const {
  std::vector<int> p(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) p[perm_[i]] = static_cast<int>(i);
  return WeylElement(std::move(p));
}

Eigen::MatrixXd WeylElement::g_action(const AlgebraModel& model) const {
  const CatalogDescriptor& desc = model.algebra.descriptor();
  const int m = desc.n;
  const int copies = desc.is_product() ? desc.copies : 1;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) p(i, perm_[i]) = 1.0;
  const Eigen::MatrixXcd p_full = replicate_blocks(p, copies);
  const int dim = model.dim();
  Eigen::MatrixXd action(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const Eigen::MatrixXcd img =
        p_full * model.algebra.basis_matrix(a) * p_full.transpose();
    action.col(a) = model.algebra.project_to_algebra(img);
  }
  return action;
}

Eigen::MatrixXd WeylElement::k_action(const AlgebraModel& model) const {
  const int rank = model.rank();
  return g_action(model).topLeftCorner(rank, rank);
}

std::vector<WeylElement> weyl_group(const AlgebraModel& model) {
  const int m = model.algebra.descriptor().n;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> group;
  do {
    group.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return group;
}

std::size_t weyl_order(const CatalogDescriptor& desc) {
  std::size_t order = 1;
  for (int i = 2; i <= desc.n; ++i) order *= static_cast<std::size_t>(i);
  return order;
}

AlgebraElement weyl_act(const AlgebraModel& model, const WeylElement& w,
                        const AlgebraElement& q) {
  return w.g_action(model) * q;
}

}  // namespace spincal
