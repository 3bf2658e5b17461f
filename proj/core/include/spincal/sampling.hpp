// sampling.hpp -- deterministic random sampling for the verification suites.
//
// Every sample draws from its own splitmix64 stream derived from (master
// seed, property id, sample index), so reports are bit-identical regardless
// of worker count or execution order.

#pragma once

#include "spincal/phase.hpp"

#include <cstdint>

namespace spincal {

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gauss() {  // Box-Muller, fully pinned arithmetic
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  Eigen::VectorXd gauss_vector(int n, double scale = 1.0) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = scale * gauss();
    return v;
  }

 private:
  std::uint64_t state_;
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

struct SamplerOptions {
  double box = 1.0;              // uniform box for the Cartan coordinates
  double momentum_scale = 1.0;   // Gaussian scale for p
  double spin_scale = 1.0;       // Gaussian scale for xi
  double condition_limit = 100;  // margin from the domain boundary
  double min_gap = 0.05;         // spectral-gap margin (regularity)
  int max_tries = 2000;
};

// Rejection sampling of a Cartan base point inside the operator domain with
// the configured margins.  Throws DomainError when the sampler exhausts its
// tries (empty admissible box).
AlgebraElement sample_domain_point(const AlgebraModel& model,
                                   const DynamicalRMatrix& r, SampleRng& rng,
                                   const SamplerOptions& opts);

// Phase point over a sampled base point; constrained zeroes xi_K.
PhasePoint sample_phase_point(const AlgebraModel& model,
                              const DynamicalRMatrix& r, SampleRng& rng,
                              const SamplerOptions& opts, bool constrained);

}  // namespace spincal
