// lie_algebra.hpp -- self-dual Lie algebras with adapted subalgebra chains.
//
// Catalog families: sl(n,R), su(n), and products sl(m,R)^N with a cyclic
// permutation automorphism.  Elements are real coefficient vectors in an
// adapted basis ordered as [Cartan K | K-perp within F | F-perp], so the
// projectors onto the chain K < F <= g are index slices.  The invariant
// bilinear form is the trace form of the defining representation.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spincal {

// Coefficient vector of an algebra element in the adapted basis.
using AlgebraElement = Eigen::VectorXd;

// Thrown when a base point leaves the admissible open domain (singular
// r-matrix operator, degenerate spectrum, collision during integration).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

enum class Family { kSpecialLinear, kSpecialUnitary, kProductSpecialLinear };

// Catalog identifier, e.g. {sl, n=3}, {su, n=2}, {product_sl, n=2, copies=3}.
struct CatalogDescriptor {
  Family family = Family::kSpecialLinear;
  int n = 2;       // size of the simple factor in the defining representation
  int copies = 1;  // N for product families, 1 otherwise

  // Accepts "sl(3)", "su(4)", "sl(2)^3".
  static CatalogDescriptor parse(const std::string& text);
  std::string label() const;
  bool is_product() const { return family == Family::kProductSpecialLinear; }
};

// Index data and projector masks for the chain K < F <= g with
// g = K + Kperp and F = K + (Kperp & F).  Masks are 0/1 diagonals of the
// B-orthogonal projectors, valid because the basis is adapted.
struct SubalgebraChain {
  int rank = 0;       // dim K
  int dim_f = 0;      // dim F
  int dim = 0;        // dim g

  Eigen::VectorXd k_mask, kperp_mask, f_mask, fperp_mask, kperp_f_mask;

  std::vector<int> k_indices, kperp_indices, f_indices, fperp_indices,
      kperp_f_indices;

  // Adapted ordering: K = [0, rank), Kperp&F = [rank, dim_f), Fperp = [dim_f, dim).
  int kperp_f_dim() const { return dim_f - rank; }
  int fperp_dim() const { return dim - dim_f; }
};

// B-orthogonal Lie algebra automorphism fixing K pointwise, as a matrix on
// coefficient vectors.
struct Automorphism {
  std::string label;       // "identity" | "cyclic"
  Eigen::MatrixXd action;
  Eigen::MatrixXd inverse;
  bool is_identity() const { return label == "identity"; }
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(CatalogDescriptor desc, std::vector<Eigen::MatrixXcd> basis);

  int dim() const { return static_cast<int>(basis_.size()); }
  int defining_size() const { return defining_size_; }
  const CatalogDescriptor& descriptor() const { return desc_; }
  const std::string& label() const { return label_; }

  const Eigen::MatrixXd& gram() const { return gram_; }
  // Solves G c = rhs for the B-dual coordinates.
  Eigen::VectorXd gram_solve(const Eigen::VectorXd& rhs) const;

  double bilinear(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  // ad_x as a dense matrix on coefficient vectors.
  Eigen::MatrixXd ad_matrix(const AlgebraElement& x) const;
  // exp(ad_x); B-orthogonal for every x.
  Eigen::MatrixXd exp_ad(const AlgebraElement& x) const;

  // Defining-representation matrix of an element (real families have zero
  // imaginary part).
  Eigen::MatrixXcd to_matrix(const AlgebraElement& x) const;
  const Eigen::MatrixXcd& basis_matrix(int a) const { return basis_[a]; }

  // B-orthogonal projection of a defining-representation matrix onto the
  // algebra: the unique W with B(W, Z) = Re tr(M Z) for all Z in g.
  AlgebraElement project_to_algebra(const Eigen::MatrixXcd& m) const;

  double structure_constant(int a, int b, int c) const;
  const Eigen::SparseMatrix<double>& ad_generator(int a) const { return ad_[a]; }

 private:
  CatalogDescriptor desc_;
  std::string label_;
  int defining_size_ = 0;
  std::vector<Eigen::MatrixXcd> basis_;
  std::vector<Eigen::SparseMatrix<double>> ad_;  // ad_[a] = ad of basis elt a
  Eigen::MatrixXd gram_;
  Eigen::FullPivLU<Eigen::MatrixXd> gram_lu_;
};

// An algebra bundled with its subalgebra chain and available automorphisms.
struct AlgebraModel {
  LieAlgebra algebra;
  SubalgebraChain chain;
  std::vector<Automorphism> automorphisms;

  int dim() const { return algebra.dim(); }
  int rank() const { return chain.rank; }
  const Automorphism& automorphism(const std::string& label) const;

  // Full-dimension element with the given Cartan coordinates.
  AlgebraElement cartan_element(const Eigen::VectorXd& k_coords) const;

  AlgebraElement project_k(const AlgebraElement& x) const;
  AlgebraElement project_kperp(const AlgebraElement& x) const;
  AlgebraElement project_f(const AlgebraElement& x) const;
  AlgebraElement project_fperp(const AlgebraElement& x) const;
  AlgebraElement project_kperp_f(const AlgebraElement& x) const;

  bool supported_in_k(const AlgebraElement& x, double tol = 1e-12) const;
  bool supported_in_f(const AlgebraElement& x, double tol = 1e-12) const;
};

using ModelPtr = std::shared_ptr<const AlgebraModel>;

// Constructs a catalog algebra with validated invariants.  Throws
// std::invalid_argument for unsupported families or out-of-range parameters
// (n in [2,8], copies in [2,4] for products).
AlgebraModel build_algebra(const CatalogDescriptor& spec);
ModelPtr make_model(const CatalogDescriptor& spec);

// Re-checks the construction invariants (Jacobi, ad-invariance of B,
// commutator reproduction, chain closure, automorphism properties).
// Throws std::logic_error with a description on violation.
void validate_algebra(const AlgebraModel& model);

}  // namespace spincal
