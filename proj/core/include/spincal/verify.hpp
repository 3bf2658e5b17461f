// verify.hpp -- seeded residual suites over the catalog operators, fanned out
// across workers and merged deterministically by sample index.

#pragma once

#include "spincal/reduction.hpp"
#include "spincal/sampling.hpp"

#include <functional>
#include <optional>

namespace spincal {

struct PropertyResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string command;  // "verify" | "reduce-check"
  std::string algebra;
  std::string rmatrix_kind;
  std::string automorphism;
  std::uint64_t seed = 0;
  int samples = 0;
  double perturbation = 0.0;
  std::vector<PropertyResult> properties;

  bool all_pass() const;
};

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 42;
  int threads = 1;
  double perturb = 0.0;  // negative-control perturbation of the base family
  std::optional<double> tolerance_override;
  SamplerOptions sampler;
};

// Evaluates fn(0..n-1) on `threads` workers; results keep index order.
std::vector<double> run_samples(int n, int threads,
                                const std::function<double(int)>& fn);

// Residual suites for one catalog operator: Yang-Baxter, equivariance,
// quasi-triangularity, block compatibility, quasi-Lax bracket identity,
// first-class property, Dirac round trip.
VerificationReport run_verification(const ModelPtr& model, RMatrixKind kind,
                                    const std::string& theta_label,
                                    const VerifyOptions& options);

// Slice suites: constraint solution, quasi-Lax and Hamiltonian match,
// two-form match, Weyl identification (constructed and negative control).
VerificationReport run_reduction_checks(const ModelPtr& model,
                                        const std::string& theta_label,
                                        const VerifyOptions& options);

}  // namespace spincal
