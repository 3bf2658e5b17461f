#include "spincal/verify.hpp"

#include <cmath>
#include <thread>

namespace spincal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double operator_two_norm(const MatrixXd& m) {
  return m.jacobiSvd().singularValues()(0);
}

// Sweeps an Abelian base point along the F-orbit, staying inside the domain.
AlgebraElement orbit_sweep(const AlgebraModel& model, const AlgebraElement& q,
                           SampleRng& rng) {
  const AlgebraElement eta =
      model.project_f(rng.gauss_vector(model.dim(), 0.3));
  return model.algebra.exp_ad(eta) * q;
}

// Orbit directions tangent to the constraint surface: P_K [x, xi] = 0,
// sampled from the kernel of the linear map x -> (ad_x xi)_K.
AlgebraElement tangent_orbit_direction(const AlgebraModel& model,
                                       const AlgebraElement& xi,
                                       SampleRng& rng) {
  const int dim = model.dim();
  const int rank = model.rank();
  MatrixXd m(rank, dim);
  for (int a = 0; a < dim; ++a)
    m.col(a) = (model.algebra.ad_generator(a) * xi).head(rank);
  const MatrixXd kernel = Eigen::FullPivLU<MatrixXd>(m).kernel();
  return kernel * rng.gauss_vector(static_cast<int>(kernel.cols()));
}

struct PropertySpec {
  std::string name;
  double tolerance;
  std::function<double(SampleRng&)> residual;
};

PropertyResult run_property(const PropertySpec& spec, std::uint64_t master,
                            std::uint64_t stream, int samples, int threads) {
  const std::vector<double> residuals =
      run_samples(samples, threads, [&](int index) {
        SampleRng rng(derive_seed(master, stream, index));
        return spec.residual(rng);
      });
  PropertyResult out;
  out.name = spec.name;
  out.samples = samples;
  out.tolerance = spec.tolerance;
  double sum = 0.0;
  for (double v : residuals) {
    out.max_residual = std::max(out.max_residual, v);
    sum += v;
  }
  out.mean_residual = samples > 0 ? sum / samples : 0.0;
  out.pass = out.max_residual <= out.tolerance;
  return out;
}

}  // namespace

bool VerificationReport::all_pass() const {
  for (const auto& p : properties)
    if (!p.pass) return false;
  return true;
}

std::vector<double> run_samples(int n, int threads,
                                const std::function<double(int)>& fn) {
  std::vector<double> results(n, 0.0);
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < n; i += threads) results[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return results;
}

VerificationReport run_verification(const ModelPtr& model, RMatrixKind kind,
                                    const std::string& theta_label,
                                    const VerifyOptions& options) {
  const bool abelian = kind == RMatrixKind::kAbelian;
  DynamicalRMatrix base = DynamicalRMatrix::alekseev_meinrenken(model, theta_label);
  if (options.perturb != 0.0) base = base.perturbed(options.perturb);
  const DynamicalRMatrix r =
      abelian ? base : nonabelian_extend(base);
  const AlgebraModel& m = *model;
  const SamplerOptions& sopts = options.sampler;
  const int dim = m.dim();

  auto base_point = [&](SampleRng& rng) {
    AlgebraElement q = sample_domain_point(m, base, rng, sopts);
    if (!abelian) q = orbit_sweep(m, q, rng);
    return q;
  };

  auto tol = [&](double fallback) {
    return options.tolerance_override.value_or(fallback);
  };

  std::vector<PropertySpec> specs;
  specs.push_back({"cdybe", tol(abelian ? 1e-9 : 1e-6), [&](SampleRng& rng) {
    const AlgebraElement q = base_point(rng);
    const AlgebraElement x = rng.gauss_vector(dim);
    const AlgebraElement y = rng.gauss_vector(dim);
    return cdybe_residual(r, q, x, y).norm();
  }});
  specs.push_back({"equivariance", tol(abelian ? 1e-12 : 1e-8),
                   [&](SampleRng& rng) {
    const AlgebraElement q = base_point(rng);
    AlgebraElement x = abelian
        ? m.cartan_element(rng.gauss_vector(m.rank()))
        : AlgebraElement(m.project_f(rng.gauss_vector(dim)));
    return equivariance_residual(r, q, x).norm();
  }});
  specs.push_back({"quasi_triangularity", tol(1e-10), [&](SampleRng& rng) {
    const AlgebraElement q = base_point(rng);
    const MatrixXd rm = r.evaluate(q);
    return (rm + b_adjoint(m, rm) - MatrixXd::Identity(dim, dim)).norm();
  }});
  specs.push_back({"compatibility", tol(abelian ? 1e-12 : 1e-10),
                   [&](SampleRng& rng) {
    const AlgebraElement q = base_point(rng);
    const MatrixXd rm = r.evaluate(q);
    const int split = abelian ? m.rank() : m.chain.dim_f;
    double off = rm.block(0, split, split, dim - split).norm();
    off = std::max(off, rm.block(split, 0, dim - split, split).norm());
    return off;
  }});
  specs.push_back({"quasi_lax_bracket", tol(abelian ? 1e-9 : 1e-6),
                   [&](SampleRng& rng) {
    PhasePoint pt;
    pt.q = base_point(rng);
    pt.p = abelian
        ? m.cartan_element(rng.gauss_vector(m.rank(), sopts.momentum_scale))
        : AlgebraElement(m.project_f(rng.gauss_vector(dim, sopts.momentum_scale)));
    pt.xi = rng.gauss_vector(dim, sopts.spin_scale);
    return prop1_residual(r, pt).cwiseAbs().maxCoeff();
  }});
  specs.push_back({"first_class", tol(abelian ? 1e-10 : 1e-9),
                   [&](SampleRng& rng) {
    PhasePoint pt;
    pt.q = base_point(rng);
    pt.p = abelian
        ? m.cartan_element(rng.gauss_vector(m.rank(), sopts.momentum_scale))
        : AlgebraElement(m.project_f(rng.gauss_vector(dim, sopts.momentum_scale)));
    pt.xi = rng.gauss_vector(dim, sopts.spin_scale);
    return first_class_residual(m, pt, kind).cwiseAbs().maxCoeff();
  }});
  specs.push_back({"dirac_round_trip", tol(1e-9), [&](SampleRng& rng) {
    // Chamber representative: the debug perturbation is deliberately not
    // Weyl-equivariant, and this suite checks the pairing, not equivariance.
    const AlgebraElement q =
        diagonalize_to_cartan(m, sample_domain_point(m, base, rng, sopts)).q;
    const DynamicalRMatrix round = dirac_reduce(nonabelian_extend(base));
    return operator_two_norm(round.evaluate(q) - base.evaluate(q));
  }});

  VerificationReport report;
  report.command = "verify";
  report.algebra = m.algebra.label();
  report.rmatrix_kind = abelian ? "abelian" : "nonabelian";
  report.automorphism = theta_label;
  report.seed = options.seed;
  report.samples = options.samples;
  report.perturbation = options.perturb;
  for (size_t s = 0; s < specs.size(); ++s)
    report.properties.push_back(run_property(specs[s], options.seed, s,
                                             options.samples, options.threads));
  return report;
}

VerificationReport run_reduction_checks(const ModelPtr& model,
                                        const std::string& theta_label,
                                        const VerifyOptions& options) {
  const AlgebraModel& m = *model;
  const SamplerOptions& sopts = options.sampler;
  const DynamicalRMatrix r_clean =
      DynamicalRMatrix::alekseev_meinrenken(model, theta_label);
  // A nonzero perturbation pairs the extension with a *wrong* Abelian
  // operator: the negative control for the match suites.
  const DynamicalRMatrix r_k =
      options.perturb != 0.0 ? r_clean.perturbed(options.perturb) : r_clean;
  const DynamicalRMatrix r_f = nonabelian_extend(r_clean);

  auto constrained = [&](SampleRng& rng) {
    return sample_phase_point(m, r_clean, rng, sopts, true);
  };

  std::vector<PropertySpec> specs;
  specs.push_back({"constraint_solution", 1e-12, [&](SampleRng& rng) {
    const PhasePoint pt = constrained(rng);
    return slice_constraint_residual(m, map_m(m, pt));
  }});
  specs.push_back({"quasi_lax_match",
                   options.tolerance_override.value_or(1e-9),
                   [&](SampleRng& rng) {
    const PhasePoint pt = constrained(rng);
    return verify_quasi_lax_match(r_f, r_k, pt).quasi_lax_residual;
  }});
  specs.push_back({"hamiltonian_match",
                   options.tolerance_override.value_or(1e-9),
                   [&](SampleRng& rng) {
    const PhasePoint pt = constrained(rng);
    return verify_quasi_lax_match(r_f, r_k, pt).hamiltonian_residual;
  }});
  specs.push_back({"two_form_match",
                   options.tolerance_override.value_or(1e-7),
                   [&](SampleRng& rng) {
    const PhasePoint pt = constrained(rng);
    SliceTangent u{m.cartan_element(rng.gauss_vector(m.rank())),
                   m.cartan_element(rng.gauss_vector(m.rank())),
                   tangent_orbit_direction(m, pt.xi, rng)};
    SliceTangent v{m.cartan_element(rng.gauss_vector(m.rank())),
                   m.cartan_element(rng.gauss_vector(m.rank())),
                   tangent_orbit_direction(m, pt.xi, rng)};
    return two_form_match(m, pt, u, v);
  }});
  specs.push_back({"weyl_identify_constructed", 0.5, [&](SampleRng& rng) {
    const PhasePoint pt = constrained(rng);
    const auto group = weyl_group(m);
    const auto& w = group[rng.next_u64() % group.size()];
    const AlgebraElement kappa =
        m.cartan_element(rng.gauss_vector(m.rank(), 0.3));
    const PhasePoint hidden =
        gauge_transform(m, weyl_transport(m, w, pt), kappa);
    return weyl_identify(m, pt, hidden).has_value() ? 0.0 : 1.0;
  }});
  specs.push_back({"weyl_identify_random_none", 0.5, [&](SampleRng& rng) {
    const PhasePoint a = constrained(rng);
    const PhasePoint b = constrained(rng);
    return weyl_identify(m, a, b).has_value() ? 1.0 : 0.0;
  }});

  VerificationReport report;
  report.command = "reduce-check";
  report.algebra = m.algebra.label();
  report.rmatrix_kind = "nonabelian";
  report.automorphism = theta_label;
  report.seed = options.seed;
  report.samples = options.samples;
  report.perturbation = options.perturb;
  for (size_t s = 0; s < specs.size(); ++s)
    report.properties.push_back(run_property(specs[s], options.seed, 1000 + s,
                                             options.samples, options.threads));
  return report;
}

}  // namespace spincal
