#include "spincal/sampling.hpp"

namespace spincal {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  // One splitmix64 scramble over the packed identifiers.
  std::uint64_t z = master ^ (stream * 0x9e3779b97f4a7c15ull) ^
                    (index * 0xbf58476d1ce4e5b9ull);
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

AlgebraElement sample_domain_point(const AlgebraModel& model,
                                   const DynamicalRMatrix& r, SampleRng& rng,
                                   const SamplerOptions& opts) {
  for (int tries = 0; tries < opts.max_tries; ++tries) {
    Eigen::VectorXd coords(model.rank());
    for (int i = 0; i < model.rank(); ++i)
      coords[i] = rng.uniform(-opts.box, opts.box);
    AlgebraElement q = model.cartan_element(coords);
    if (!r.in_domain(q)) continue;
    if (r.domain_condition(q) > opts.condition_limit) continue;
    if (regularity_gap(model, q) < opts.min_gap) continue;
    return q;
  }
  throw DomainError(
      "sampler exhausted: no admissible base point found in the configured box");
}

PhasePoint sample_phase_point(const AlgebraModel& model,
                              const DynamicalRMatrix& r, SampleRng& rng,
                              const SamplerOptions& opts, bool constrained) {
  PhasePoint pt;
  pt.q = sample_domain_point(model, r, rng, opts);
  pt.p = model.cartan_element(rng.gauss_vector(model.rank(), opts.momentum_scale));
  pt.xi = rng.gauss_vector(model.dim(), opts.spin_scale);
  if (constrained) pt.xi = model.project_kperp(pt.xi);
  return pt;
}

}  // namespace spincal
