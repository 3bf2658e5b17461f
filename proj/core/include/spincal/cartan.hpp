// cartan.hpp -- conjugation of regular elements of F into the Cartan
// subalgebra K, and the Weyl group W = N_F(K)/K acting by permutations of
// the diagonal entries.

#pragma once

#include "spincal/lie_algebra.hpp"

#include <optional>

namespace spincal {

// A group element of F acting on the algebra by conjugation in the defining
// representation; `adjoint` is the induced (B-orthogonal) matrix on
// coefficient vectors.
struct GroupConjugation {
  Eigen::MatrixXcd defining;
  Eigen::MatrixXd adjoint;
  Eigen::MatrixXd adjoint_inverse;

  AlgebraElement apply(const AlgebraElement& x) const { return adjoint * x; }
  AlgebraElement apply_inverse(const AlgebraElement& x) const {
    return adjoint_inverse * x;
  }
};

struct CartanForm {
  GroupConjugation f;  // Ad_f Q = q
  AlgebraElement q;    // in the fundamental chamber (strictly decreasing entries)
};

// Minimum pairwise gap of the defining-representation eigenvalues of the
// F-part of Q (the invertibility margin of ad_Q on Kperp & F).
double regularity_gap(const AlgebraModel& model, const AlgebraElement& q_elem);

// Conjugates a regular element Q of F into the fundamental chamber of K.
// Throws DomainError when the spectrum is degenerate (gap below 1e-8) or not
// conjugate to the real Cartan; std::invalid_argument when Q is not in F.
CartanForm diagonalize_to_cartan(const AlgebraModel& model, const AlgebraElement& q_elem);

// Weyl group element, stored as a permutation of the diagonal slots of the
// simple factor and realized by conjugation with the permutation matrix
// (replicated over all factors for product algebras).
class WeylElement {
 public:
  explicit WeylElement(std::vector<int> perm) : perm_(std::move(perm)) {}

  static WeylElement identity(int slots);
  bool is_identity() const;
  int slots() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }

  WeylElement compose(const WeylElement& other) const;  // this after other
  WeylElement inverse() const;
  bool operator==(const WeylElement& other) const { return perm_ == other.perm_; }

  // Conjugation action on coefficient vectors of g, and its restriction to K.
  Eigen::MatrixXd g_action(const AlgebraModel& model) const;
  Eigen::MatrixXd k_action(const AlgebraModel& model) const;

 private:
  std::vector<int> perm_;  // slot i of the result comes from slot perm_[i]
};

// The full Weyl group of K inside F (all slot permutations of the simple
// factor; order n! for sl(n)/su(n), m! for sl(m)^N).
std::vector<WeylElement> weyl_group(const AlgebraModel& model);
std::size_t weyl_order(const CatalogDescriptor& desc);

AlgebraElement weyl_act(const AlgebraModel& model, const WeylElement& w,
                        const AlgebraElement& q);

}  // namespace spincal
