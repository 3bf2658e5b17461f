#include "spincal/cartan.hpp"
#include "spincal/lie_algebra.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace spincal;
using spincal::testing::TestRng;

namespace {

AlgebraElement basis_vector(const AlgebraModel& m, int a) {
  AlgebraElement e = AlgebraElement::Zero(m.dim());
  e[a] = 1.0;
  return e;
}

// Jacobi residual sum_cyc f^{ab}_d f^{dc}_e over all index triples.
double jacobi_residual(const LieAlgebra& g) {
  double worst = 0.0;
  const int dim = g.dim();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int e = 0; e < dim; ++e) {
          double s = 0.0;
          for (int d = 0; d < dim; ++d) {
            s += g.structure_constant(a, b, d) * g.structure_constant(d, c, e);
            s += g.structure_constant(b, c, d) * g.structure_constant(d, a, e);
            s += g.structure_constant(c, a, d) * g.structure_constant(d, b, e);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace

TEST_CASE("sl(2) basis and bilinear form") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)"));
  const auto& g = model.algebra;
  CHECK(g.dim() == 3);
  CHECK(model.rank() == 1);

  const auto H = basis_vector(model, 0);
  const auto E = basis_vector(model, 1);
  const auto F = basis_vector(model, 2);

  CHECK(g.bilinear(H, H) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.bilinear(E, F) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(g.bilinear(H, E)) < 1e-14);

  CHECK((g.bracket(E, F) - H).norm() < 1e-14);
  CHECK((g.bracket(H, E) - 2.0 * E).norm() < 1e-14);
  CHECK((g.bracket(H, F) + 2.0 * F).norm() < 1e-14);
}

TEST_CASE("su(2) trace form is negative definite") {
  auto model = build_algebra(CatalogDescriptor::parse("su(2)"));
  CHECK(model.algebra.dim() == 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.algebra.gram());
  CHECK(es.eigenvalues().maxCoeff() < 0.0);
}

TEST_CASE("cyclic product sl(2)^3") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)^3"));
  CHECK(model.algebra.dim() == 9);
  CHECK(model.rank() == 1);
  CHECK(model.chain.dim_f == 3);
  CHECK(model.chain.fperp_dim() == 6);

  const auto& theta = model.automorphism("cyclic");
  const Eigen::MatrixXd cube = theta.action * theta.action * theta.action;
  CHECK((cube - Eigen::MatrixXd::Identity(9, 9)).norm() < 1e-12);
  // theta fixes the Cartan of the fixed-point subalgebra pointwise.
  const auto k = basis_vector(model, 0);
  CHECK((theta.action * k - k).norm() < 1e-13);
  // theta moves Fperp difference modes.
  const auto d = basis_vector(model, 3);
  CHECK((theta.action * d - d).norm() > 0.5);
}

TEST_CASE("catalog rejects unsupported input") {
  CHECK_THROWS_AS(CatalogDescriptor::parse("so(3)"), std::invalid_argument);
  CHECK_THROWS_AS(build_algebra(CatalogDescriptor::parse("sl(9)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_algebra(CatalogDescriptor::parse("sl(2)^5")),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_algebra(CatalogDescriptor::parse("su(1)")),
                  std::invalid_argument);

  auto m2 = build_algebra(CatalogDescriptor::parse("sl(2)"));
  auto m3 = build_algebra(CatalogDescriptor::parse("sl(3)"));
  CHECK_THROWS_AS(m3.algebra.bracket(basis_vector(m2, 0), basis_vector(m3, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(m3.algebra.bilinear(basis_vector(m2, 0), basis_vector(m3, 0)),
                  std::invalid_argument);
}

TEST_CASE("bracket antisymmetry and bilinear invariance at random elements") {
  for (const char* name : {"sl(3)", "su(3)", "sl(2)^3"}) {
    auto model = build_algebra(CatalogDescriptor::parse(name));
    TestRng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = testing::random_element(model, rng);
      const auto y = testing::random_element(model, rng);
      const auto z = testing::random_element(model, rng);
      CHECK(model.algebra.bracket(x, x).norm() < 1e-12 * x.norm() * x.norm());
      const double inv = model.algebra.bilinear(x, model.algebra.bracket(y, z)) -
                         model.algebra.bilinear(model.algebra.bracket(x, y), z);
      CHECK(std::abs(inv) < 1e-10);
      // The gram pairing is the trace form of the defining representation.
      const double trace_form =
          (model.algebra.to_matrix(x) * model.algebra.to_matrix(y))
              .trace()
              .real();
      CHECK(model.algebra.bilinear(x, y) ==
            doctest::Approx(trace_form).epsilon(1e-11));
    }
  }
}

TEST_CASE("chain projectors are idempotent slices summing to the identity") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)^3"));
  const auto& ch = model.chain;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(model.dim());
  CHECK((ch.k_mask + ch.kperp_mask - ones).norm() == 0.0);
  CHECK((ch.f_mask + ch.fperp_mask - ones).norm() == 0.0);
  CHECK((ch.k_mask + ch.kperp_f_mask - ch.f_mask).norm() == 0.0);
  CHECK((ch.k_mask.cwiseProduct(ch.k_mask) - ch.k_mask).norm() == 0.0);
  TestRng rng(9);
  const auto x = testing::random_element(model, rng);
  CHECK((model.project_k(model.project_k(x)) - model.project_k(x)).norm() == 0.0);
  // B-orthogonality of the split.
  CHECK(std::abs(model.algebra.bilinear(model.project_k(x),
                                        model.project_kperp(x))) < 1e-12);
  CHECK(std::abs(model.algebra.bilinear(model.project_f(x),
                                        model.project_fperp(x))) < 1e-12);
}

TEST_CASE("Jacobi identity to machine precision") {
  for (const char* name : {"sl(2)", "su(2)", "sl(3)"}) {
    auto model = build_algebra(CatalogDescriptor::parse(name));
    CHECK(jacobi_residual(model.algebra) < 1e-12);
  }
}

TEST_CASE("adjoint action: root eigenvalues and exponentials on sl(2)") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)"));
  const auto H = basis_vector(model, 0);
  const auto E = basis_vector(model, 1);
  const double t = 0.37;

  const Eigen::MatrixXd ad_q = model.algebra.ad_matrix(t * H);
  CHECK((ad_q * E - 2.0 * t * E).norm() < 1e-14);

  const Eigen::MatrixXd exp_q = model.algebra.exp_ad(t * H);
  CHECK((exp_q * E - std::exp(2.0 * t) * E).norm() < 1e-12);

  // exp_ad(q) exp_ad(-q) = id.
  CHECK((model.algebra.exp_ad(t * H) * model.algebra.exp_ad(-t * H) -
         Eigen::MatrixXd::Identity(3, 3))
            .norm() < 1e-13);
}

TEST_CASE("exp_ad preserves the bilinear form") {
  for (const char* name : {"sl(3)", "su(3)", "sl(2)^3"}) {
    auto model = build_algebra(CatalogDescriptor::parse(name));
    TestRng rng(11);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto q = testing::random_element(model, rng, 0.8);
      const Eigen::MatrixXd a = model.algebra.exp_ad(q);
      worst = std::max(
          worst,
          (a.transpose() * model.algebra.gram() * a - model.algebra.gram()).norm());
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("diagonalize_to_cartan on sl(2): E + F lands on H") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)"));
  const auto H = basis_vector(model, 0);
  const auto E = basis_vector(model, 1);
  const auto F = basis_vector(model, 2);

  const AlgebraElement q_in = E + F;  // eigenvalues +-1
  const CartanForm cf = diagonalize_to_cartan(model, q_in);
  CHECK((cf.q - H).norm() < 1e-12);
  CHECK((cf.f.apply(q_in) - cf.q).norm() < 1e-12);

  // Already-diagonal input in the chamber stays fixed.
  const CartanForm cf2 = diagonalize_to_cartan(model, 0.7 * H);
  CHECK((cf2.q - 0.7 * H).norm() < 1e-13);
  CHECK((cf2.f.adjoint - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("diagonalize_to_cartan rejects degenerate and non-split input") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)"));
  const auto E = basis_vector(model, 1);
  const auto F = basis_vector(model, 2);
  CHECK_THROWS_AS(diagonalize_to_cartan(model, AlgebraElement::Zero(3)),
                  DomainError);
  // E - F has eigenvalues +-i: not conjugate to the split Cartan.
  CHECK_THROWS_AS(diagonalize_to_cartan(model, E - F), DomainError);
}

TEST_CASE("diagonalize_to_cartan round trip at random regular points") {
  for (const char* name : {"sl(2)", "sl(3)", "su(3)", "sl(2)^3"}) {
    auto model = build_algebra(CatalogDescriptor::parse(name));
    TestRng rng(23);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
      Eigen::VectorXd coords = rng.gauss_vector(model.rank());
      AlgebraElement q0 = model.cartan_element(coords);
      if (regularity_gap(model, q0) < 1e-3) continue;
      // Sweep along the orbit of F through the Cartan point.
      AlgebraElement eta = testing::random_element(model, rng, 0.5);
      if (!model.chain.fperp_indices.empty()) eta = model.project_f(eta);
      const Eigen::MatrixXd ad_g = model.algebra.exp_ad(eta);
      const AlgebraElement big_q = ad_g * q0;
      const CartanForm cf = diagonalize_to_cartan(model, big_q);
      worst = std::max(worst, (cf.f.apply_inverse(cf.q) - big_q).norm());
      // The recovered Cartan point has the same factor spectrum as q0.
      CHECK(std::abs(regularity_gap(model, cf.q) - regularity_gap(model, q0)) <
            1e-9);
      ++done;
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("adjoint matrix of a conjugation preserves B") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(3)"));
  TestRng rng(5);
  const auto q0 = model.cartan_element(Eigen::Vector2d(0.9, 0.2));
  const auto eta = testing::random_element(model, rng, 0.4);
  const AlgebraElement q_in = model.algebra.exp_ad(eta) * q0;
  const CartanForm cf = diagonalize_to_cartan(model, q_in);
  const Eigen::MatrixXd& gram = model.algebra.gram();
  CHECK((cf.f.adjoint.transpose() * gram * cf.f.adjoint - gram).norm() < 1e-10);
}

TEST_CASE("Weyl group orders and action") {
  auto sl2 = build_algebra(CatalogDescriptor::parse("sl(2)"));
  auto sl3 = build_algebra(CatalogDescriptor::parse("sl(3)"));
  CHECK(weyl_group(sl2).size() == 2);
  CHECK(weyl_group(sl3).size() == 6);
  CHECK(weyl_order(sl3.algebra.descriptor()) == 6);

  // sl(2): the nontrivial element sends H to -H and is an involution.
  const auto H = basis_vector(sl2, 0);
  const auto group = weyl_group(sl2);
  const auto& w = group[1];
  CHECK_FALSE(w.is_identity());
  CHECK((weyl_act(sl2, w, H) + H).norm() < 1e-13);
  CHECK(w.compose(w).is_identity());

  // Action on K preserves the restricted bilinear form.
  const Eigen::MatrixXd ka = w.k_action(sl2);
  const Eigen::MatrixXd gk = sl2.algebra.gram().topLeftCorner(1, 1);
  CHECK((ka.transpose() * gk * ka - gk).norm() < 1e-13);
}

TEST_CASE("weyl_act preserves the ad-spectrum") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(3)"));
  TestRng rng(31);
  const auto q = model.cartan_element(Eigen::Vector2d(1.1, 0.3));
  for (const auto& w : weyl_group(model)) {
    const AlgebraElement qw = weyl_act(model, w, q);
    Eigen::VectorXcd s0 =
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(
            model.algebra.ad_matrix(q).cast<std::complex<double>>(), false)
            .eigenvalues();
    Eigen::VectorXcd s1 =
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(
            model.algebra.ad_matrix(qw).cast<std::complex<double>>(), false)
            .eigenvalues();
    std::sort(s0.data(), s0.data() + s0.size(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::sort(s1.data(), s1.data() + s1.size(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    CHECK((s0 - s1).norm() < 1e-10);
  }
}

TEST_CASE("automorphism residuals on basis pairs") {
  auto model = build_algebra(CatalogDescriptor::parse("sl(2)^3"));
  const auto& theta = model.automorphism("cyclic");
  const auto& g = model.algebra;
  const auto& gram = g.gram();
  CHECK((theta.action.transpose() * gram * theta.action - gram).norm() < 1e-12);
  double worst = 0.0;
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) {
      const auto ea = basis_vector(model, a);
      const auto eb = basis_vector(model, b);
      const AlgebraElement lhs = theta.action * g.bracket(ea, eb);
      const AlgebraElement rhs = g.bracket(theta.action * ea, theta.action * eb);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("validate_algebra accepts every catalog family") {
  for (const char* name : {"sl(2)", "sl(4)", "su(2)", "su(4)", "sl(3)^2"}) {
    auto model = build_algebra(CatalogDescriptor::parse(name));
    CHECK_NOTHROW(validate_algebra(model));
  }
}
