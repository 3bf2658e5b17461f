#include "spincal/lie_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cctype>
#include <cmath>
#include <sstream>

namespace spincal {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

const std::complex<double> kI(0.0, 1.0);

MatrixXcd unit(int size, int r, int c) {
  MatrixXcd m = MatrixXcd::Zero(size, size);
  m(r, c) = 1.0;
  return m;
}

// Embeds an m x m block into copy `b` of an (m*copies) square matrix.
MatrixXcd embed_block(const MatrixXcd& block, int copies, int b) {
  const int m = static_cast<int>(block.rows());
  MatrixXcd out = MatrixXcd::Zero(m * copies, m * copies);
  out.block(b * m, b * m, m, m) = block;
  return out;
}

// Basis of sl(n,R): Cartan H_i = E_ii - E_{i+1,i+1}, then E_ij (i != j)
// ordered by root pairs (E_ij, E_ji) for i < j.
void sl_basis(int n, std::vector<MatrixXcd>* cartan, std::vector<MatrixXcd>* rest) {
  for (int i = 0; i + 1 < n; ++i)
    cartan->push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      rest->push_back(unit(n, i, j));
      rest->push_back(unit(n, j, i));
    }
}

// Basis of su(n): Cartan i(E_kk - E_{k+1,k+1}), then pairs
// (E_jk - E_kj, i(E_jk + E_kj)) for j < k.
void su_basis(int n, std::vector<MatrixXcd>* cartan, std::vector<MatrixXcd>* rest) {
  for (int i = 0; i + 1 < n; ++i)
    cartan->push_back(kI * (unit(n, i, i) - unit(n, i + 1, i + 1)));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      rest->push_back(unit(n, j, k) - unit(n, k, j));
      rest->push_back(kI * (unit(n, j, k) + unit(n, k, j)));
    }
}

double frob(const MatrixXd& m) { return m.norm(); }

}  // namespace

CatalogDescriptor CatalogDescriptor::parse(const std::string& text) {
  // Grammar: ("sl"|"su") "(" n ")" [ "^" copies ]
  CatalogDescriptor d;
  size_t pos = 0;
  auto fail = [&text]() {
    throw std::invalid_argument("unsupported algebra descriptor: '" + text + "'");
  };
  if (text.rfind("sl", 0) == 0)
    d.family = Family::kSpecialLinear;
  else if (text.rfind("su", 0) == 0)
    d.family = Family::kSpecialUnitary;
  else
    fail();
  pos = 2;
  if (pos >= text.size() || text[pos] != '(') fail();
  size_t close = text.find(')', pos);
  if (close == std::string::npos) fail();
  try {
    d.n = std::stoi(text.substr(pos + 1, close - pos - 1));
  } catch (const std::exception&) {
    fail();
  }
  pos = close + 1;
  if (pos < text.size()) {
    if (text[pos] != '^') fail();
    try {
      d.copies = std::stoi(text.substr(pos + 1));
    } catch (const std::exception&) {
      fail();
    }
    if (d.family != Family::kSpecialLinear) fail();
    d.family = Family::kProductSpecialLinear;
  }
  return d;
}

std::string CatalogDescriptor::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::kSpecialLinear: os << "sl(" << n << ")"; break;
    case Family::kSpecialUnitary: os << "su(" << n << ")"; break;
    case Family::kProductSpecialLinear: os << "sl(" << n << ")^" << copies; break;
  }
  return os.str();
}

LieAlgebra::LieAlgebra(CatalogDescriptor desc, std::vector<MatrixXcd> basis)
    : desc_(desc), label_(desc.label()), basis_(std::move(basis)) {
  const int dim = static_cast<int>(basis_.size());
  defining_size_ = static_cast<int>(basis_[0].rows());

  gram_.resize(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      const double v = (basis_[a] * basis_[b]).trace().real();
      gram_(a, b) = v;
      gram_(b, a) = v;
    }
  gram_lu_.compute(gram_);
  if (!gram_lu_.isInvertible())
    throw std::logic_error("bilinear form degenerate for " + label_);

  // Structure constants from defining-representation commutators:
  // column b of ad_[a] holds the coefficients of [T^a, T^b].
  ad_.resize(dim);
  std::vector<Eigen::Triplet<double>> trip;
  for (int a = 0; a < dim; ++a) {
    trip.clear();
    for (int b = 0; b < dim; ++b) {
      const MatrixXcd comm = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      const VectorXd coeff = project_to_algebra(comm);
      for (int c = 0; c < dim; ++c)
        if (std::abs(coeff[c]) > 1e-13) trip.emplace_back(c, b, coeff[c]);
    }
    ad_[a].resize(dim, dim);
    ad_[a].setFromTriplets(trip.begin(), trip.end());
  }
}

Eigen::VectorXd LieAlgebra::gram_solve(const VectorXd& rhs) const {
  return gram_lu_.solve(rhs);
}

double LieAlgebra::bilinear(const AlgebraElement& x, const AlgebraElement& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("bilinear: dimension mismatch");
  return x.dot(gram_ * y);
}

AlgebraElement LieAlgebra::bracket(const AlgebraElement& x,
                                   const AlgebraElement& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("bracket: dimension mismatch");
  VectorXd out = VectorXd::Zero(dim());
  for (int a = 0; a < dim(); ++a)
    if (x[a] != 0.0) out.noalias() += x[a] * (ad_[a] * y);
  return out;
}

MatrixXd LieAlgebra::ad_matrix(const AlgebraElement& x) const {
  if (x.size() != dim())
    throw std::invalid_argument("ad_matrix: dimension mismatch");
  MatrixXd out = MatrixXd::Zero(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    if (x[a] != 0.0) out += x[a] * MatrixXd(ad_[a]);
  return out;
}

MatrixXd LieAlgebra::exp_ad(const AlgebraElement& x) const {
  return ad_matrix(x).exp();
}

MatrixXcd LieAlgebra::to_matrix(const AlgebraElement& x) const {
  if (x.size() != dim())
    throw std::invalid_argument("to_matrix: dimension mismatch");
  MatrixXcd out = MatrixXcd::Zero(defining_size_, defining_size_);
  for (int a = 0; a < dim(); ++a)
    if (x[a] != 0.0) out += x[a] * basis_[a];
  return out;
}

AlgebraElement LieAlgebra::project_to_algebra(const MatrixXcd& m) const {
  VectorXd rhs(dim());
  for (int b = 0; b < dim(); ++b) rhs[b] = (m * basis_[b]).trace().real();
  return gram_lu_.solve(rhs);
}

double LieAlgebra::structure_constant(int a, int b, int c) const {
  return ad_[a].coeff(c, b);
}

const Automorphism& AlgebraModel::automorphism(const std::string& label) const {
  for (const auto& t : automorphisms)
    if (t.label == label) return t;
  throw std::invalid_argument("unknown automorphism '" + label + "' for " +
                              algebra.label());
}

AlgebraElement AlgebraModel::cartan_element(const VectorXd& k_coords) const {
  if (k_coords.size() != chain.rank)
    throw std::invalid_argument("cartan_element: expected rank-sized coordinates");
  AlgebraElement x = AlgebraElement::Zero(dim());
  x.head(chain.rank) = k_coords;
  return x;
}

AlgebraElement AlgebraModel::project_k(const AlgebraElement& x) const {
  return chain.k_mask.cwiseProduct(x);
}
AlgebraElement AlgebraModel::project_kperp(const AlgebraElement& x) const {
  return chain.kperp_mask.cwiseProduct(x);
}
AlgebraElement AlgebraModel::project_f(const AlgebraElement& x) const {
  return chain.f_mask.cwiseProduct(x);
}
AlgebraElement AlgebraModel::project_fperp(const AlgebraElement& x) const {
  return chain.fperp_mask.cwiseProduct(x);
}
AlgebraElement AlgebraModel::project_kperp_f(const AlgebraElement& x) const {
  return chain.kperp_f_mask.cwiseProduct(x);
}

bool AlgebraModel::supported_in_k(const AlgebraElement& x, double tol) const {
  return (x - project_k(x)).norm() <= tol * std::max(1.0, x.norm());
}
bool AlgebraModel::supported_in_f(const AlgebraElement& x, double tol) const {
  return (x - project_f(x)).norm() <= tol * std::max(1.0, x.norm());
}

namespace {

SubalgebraChain make_chain(int rank, int dim_f, int dim) {
  SubalgebraChain ch;
  ch.rank = rank;
  ch.dim_f = dim_f;
  ch.dim = dim;
  ch.k_mask = VectorXd::Zero(dim);
  ch.kperp_mask = VectorXd::Zero(dim);
  ch.f_mask = VectorXd::Zero(dim);
  ch.fperp_mask = VectorXd::Zero(dim);
  ch.kperp_f_mask = VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (i < rank) {
      ch.k_mask[i] = 1.0;
      ch.k_indices.push_back(i);
    } else {
      ch.kperp_mask[i] = 1.0;
      ch.kperp_indices.push_back(i);
    }
    if (i < dim_f) {
      ch.f_mask[i] = 1.0;
      ch.f_indices.push_back(i);
    } else {
      ch.fperp_mask[i] = 1.0;
      ch.fperp_indices.push_back(i);
    }
    if (i >= rank && i < dim_f) {
      ch.kperp_f_mask[i] = 1.0;
      ch.kperp_f_indices.push_back(i);
    }
  }
  return ch;
}

Automorphism make_identity_automorphism(int dim) {
  Automorphism t;
  t.label = "identity";
  t.action = MatrixXd::Identity(dim, dim);
  t.inverse = t.action;
  return t;
}

// Cyclic shift of the product factors: (X_1,...,X_N) -> (X_N, X_1,...,X_{N-1}).
Automorphism make_cyclic_automorphism(const LieAlgebra& algebra, int m, int copies) {
  const int dim = algebra.dim();
  const int size = m * copies;
  MatrixXcd perm = MatrixXcd::Zero(size, size);
  for (int b = 0; b < copies; ++b) {
    const int src = b;
    const int dst = (b + 1) % copies;
    for (int i = 0; i < m; ++i) perm(dst * m + i, src * m + i) = 1.0;
  }
  Automorphism t;
  t.label = "cyclic";
  t.action.resize(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const MatrixXcd img = perm * algebra.basis_matrix(a) * perm.transpose();
    t.action.col(a) = algebra.project_to_algebra(img);
  }
  t.inverse = t.action.inverse();
  return t;
}

}  // namespace

AlgebraModel build_algebra(const CatalogDescriptor& spec) {
  if (spec.n < 2 || spec.n > 8)
    throw std::invalid_argument("catalog supports n in [2, 8], got n = " +
                                std::to_string(spec.n));
  if (spec.is_product()) {
    if (spec.copies < 2 || spec.copies > 4)
      throw std::invalid_argument("product copies must lie in [2, 4], got " +
                                  std::to_string(spec.copies));
  } else if (spec.copies != 1) {
    throw std::invalid_argument("copies > 1 requires the product family");
  }

  AlgebraModel model;
  std::vector<MatrixXcd> cartan, rest;

  switch (spec.family) {
    case Family::kSpecialLinear: {
      sl_basis(spec.n, &cartan, &rest);
      std::vector<MatrixXcd> basis = cartan;
      basis.insert(basis.end(), rest.begin(), rest.end());
      model.algebra = LieAlgebra(spec, std::move(basis));
      const int dim = model.algebra.dim();
      model.chain = make_chain(spec.n - 1, dim, dim);  // F = g
      model.automorphisms = {make_identity_automorphism(dim)};
      break;
    }
    case Family::kSpecialUnitary: {
      su_basis(spec.n, &cartan, &rest);
      std::vector<MatrixXcd> basis = cartan;
      basis.insert(basis.end(), rest.begin(), rest.end());
      model.algebra = LieAlgebra(spec, std::move(basis));
      const int dim = model.algebra.dim();
      model.chain = make_chain(spec.n - 1, dim, dim);  // F = g
      model.automorphisms = {make_identity_automorphism(dim)};
      break;
    }
    case Family::kProductSpecialLinear: {
      // Adapted basis: diagonally embedded Cartan, diagonally embedded root
      // vectors (Kperp & F), then difference modes (Fperp).
      const int m = spec.n;
      const int copies = spec.copies;
      std::vector<MatrixXcd> factor_cartan, factor_rest;
      sl_basis(m, &factor_cartan, &factor_rest);
      std::vector<MatrixXcd> factor = factor_cartan;
      factor.insert(factor.end(), factor_rest.begin(), factor_rest.end());

      std::vector<MatrixXcd> basis;
      auto replicate = [&](const MatrixXcd& block) {
        MatrixXcd out = MatrixXcd::Zero(m * copies, m * copies);
        for (int b = 0; b < copies; ++b) out += embed_block(block, copies, b);
        return out;
      };
      for (const auto& h : factor_cartan) basis.push_back(replicate(h));
      for (const auto& e : factor_rest) basis.push_back(replicate(e));
      // Fperp: (0,..,T,-T,..,0) difference modes for every factor basis element.
      for (int c = 0; c + 1 < copies; ++c)
        for (const auto& t : factor)
          basis.push_back(embed_block(t, copies, c) - embed_block(t, copies, c + 1));

      model.algebra = LieAlgebra(spec, std::move(basis));
      const int dim = model.algebra.dim();
      const int dim_f = m * m - 1;
      model.chain = make_chain(m - 1, dim_f, dim);
      model.automorphisms = {make_identity_automorphism(dim),
                             make_cyclic_automorphism(model.algebra, m, copies)};
      break;
    }
  }

  validate_algebra(model);
  return model;
}

ModelPtr make_model(const CatalogDescriptor& spec) {
  return std::make_shared<const AlgebraModel>(build_algebra(spec));
}

void validate_algebra(const AlgebraModel& model) {
  const LieAlgebra& g = model.algebra;
  const int dim = g.dim();
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("algebra invariant violated: " + what);
  };

  // Gram symmetric (invertibility enforced at construction).
  check(frob(g.gram() - g.gram().transpose()) < 1e-12, "gram symmetry");

  // Ad-invariance of B: ad_a^T G + G ad_a = 0 for every generator.
  for (int a = 0; a < dim; ++a) {
    const MatrixXd ada(g.ad_generator(a));
    check(frob(ada.transpose() * g.gram() + g.gram() * ada) < 1e-10,
          "ad-invariance of the bilinear form");
  }

  // Jacobi identity via the adjoint homomorphism: ad([a,b]) = [ad_a, ad_b].
  // Sparse throughout: the generators are root-graded and the dense products
  // would dominate construction for the large products.
  for (int a = 0; a < dim; ++a) {
    const Eigen::SparseMatrix<double>& ada = g.ad_generator(a);
    AlgebraElement ea = AlgebraElement::Zero(dim);
    ea[a] = 1.0;
    for (int b = a + 1; b < dim; ++b) {
      const Eigen::SparseMatrix<double>& adb = g.ad_generator(b);
      AlgebraElement eb = AlgebraElement::Zero(dim);
      eb[b] = 1.0;
      const AlgebraElement comm = g.bracket(ea, eb);
      Eigen::SparseMatrix<double> lhs(dim, dim);
      for (int c = 0; c < dim; ++c)
        if (comm[c] != 0.0) lhs += comm[c] * g.ad_generator(c);
      const Eigen::SparseMatrix<double> resid = lhs - (ada * adb - adb * ada);
      check(resid.norm() < 1e-10, "Jacobi identity");
    }
  }

  // Structure constants reproduce defining-representation commutators.
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      AlgebraElement ea = AlgebraElement::Zero(dim);
      ea[a] = 1.0;
      AlgebraElement eb = AlgebraElement::Zero(dim);
      eb[b] = 1.0;
      const MatrixXcd direct = g.basis_matrix(a) * g.basis_matrix(b) -
                               g.basis_matrix(b) * g.basis_matrix(a);
      const MatrixXcd fromf = g.to_matrix(g.bracket(ea, eb));
      check((direct - fromf).norm() < 1e-10, "commutator reproduction");
    }

  // Chain: K Abelian, closure of K and F under the bracket, block-orthogonal gram.
  const SubalgebraChain& ch = model.chain;
  for (int i : ch.k_indices)
    for (int j : ch.k_indices) {
      AlgebraElement ei = AlgebraElement::Zero(dim);
      ei[i] = 1.0;
      AlgebraElement ej = AlgebraElement::Zero(dim);
      ej[j] = 1.0;
      check(g.bracket(ei, ej).norm() < 1e-12, "K Abelian");
    }
  for (int i : ch.f_indices)
    for (int j : ch.f_indices) {
      AlgebraElement ei = AlgebraElement::Zero(dim);
      ei[i] = 1.0;
      AlgebraElement ej = AlgebraElement::Zero(dim);
      ej[j] = 1.0;
      check((model.project_f(g.bracket(ei, ej)) - g.bracket(ei, ej)).norm() < 1e-10,
            "F closed under bracket");
    }
  for (int i : ch.k_indices)
    for (int j : ch.kperp_indices)
      check(std::abs(g.gram()(i, j)) < 1e-12, "K orthogonal to Kperp");
  for (int i : ch.f_indices)
    for (int j : ch.fperp_indices)
      check(std::abs(g.gram()(i, j)) < 1e-12, "F orthogonal to Fperp");

  // B restricted to K and to F stays non-degenerate.
  const MatrixXd gk = g.gram().topLeftCorner(ch.rank, ch.rank);
  check(Eigen::FullPivLU<MatrixXd>(gk).isInvertible(), "B|_K non-degenerate");
  const MatrixXd gf = g.gram().topLeftCorner(ch.dim_f, ch.dim_f);
  check(Eigen::FullPivLU<MatrixXd>(gf).isInvertible(), "B|_F non-degenerate");

  // Automorphisms: B-orthogonal Lie homomorphisms fixing K pointwise.
  for (const auto& t : model.automorphisms) {
    check(frob(t.action.transpose() * g.gram() * t.action - g.gram()) < 1e-10,
          "automorphism preserves B");
    for (int i : ch.k_indices) {
      AlgebraElement ei = AlgebraElement::Zero(dim);
      ei[i] = 1.0;
      check((t.action * ei - ei).norm() < 1e-12, "automorphism fixes K");
    }
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        AlgebraElement ea = AlgebraElement::Zero(dim);
        ea[a] = 1.0;
        AlgebraElement eb = AlgebraElement::Zero(dim);
        eb[b] = 1.0;
        const AlgebraElement lhs = t.action * g.bracket(ea, eb);
        const AlgebraElement rhs = g.bracket(t.action * ea, t.action * eb);
        check((lhs - rhs).norm() < 1e-10, "automorphism is a homomorphism");
      }
  }
}

}  // namespace spincal
