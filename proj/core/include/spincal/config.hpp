// config.hpp -- run configuration: a single JSON document describing the
// algebra, operator kind, initial condition, integrator, tolerances, seeds
// and output; command-line flags override individual fields.

#pragma once

#include "spincal/dynamics.hpp"
#include "spincal/sampling.hpp"

#include <optional>
#include <string>

namespace spincal {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct OutputConfig {
  std::string format = "csv";  // csv | json
  std::string path;            // empty = stdout (reports) / trajectory.csv
};

struct RunConfig {
  CatalogDescriptor algebra = CatalogDescriptor::parse("sl(3)");
  std::string automorphism;  // empty = identity (cyclic for products)
  std::string rmatrix_kind = "abelian";

  std::optional<std::vector<double>> q0, p0, xi0;
  IntegratorConfig integrator;
  int kmax = 0;  // 0 = defining size of the simple factor

  std::optional<double> residual_tolerance;
  double drift_tolerance = 1e-8;

  std::uint64_t seed = 42;
  int samples = 100;
  int threads = 1;
  double perturb = 0.0;

  SamplerOptions sampler;
  OutputConfig output;

  std::string theta_label() const {
    if (!automorphism.empty()) return automorphism;
    return algebra.is_product() ? "cyclic" : "identity";
  }
  int effective_kmax() const { return kmax > 0 ? kmax : algebra.n; }
  RMatrixKind kind() const;
};

// Parses and validates a JSON document; diagnostics carry the field path.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Builds the initial phase point from the config lists (lengths must match
// the algebra dimension and q must pass the domain predicate).
PhasePoint initial_point(const RunConfig& config, const AlgebraModel& model,
                         const DynamicalRMatrix& r);

}  // namespace spincal
