#pragma once

#include "mcbf/types.hpp"

namespace mcbf {

/// Multipath downlink channel model: per user, L ~ U[paths_min, paths_max]
/// scattering paths with CN(0,1) gains and U[-pi/2, pi/2] departure angles,
/// summed over half-wavelength ULA steering vectors and scaled by sqrt(N/L).
struct ChannelModelParams {
  int N = 0;
  int M = 0;
  int paths_min = 5;
  int paths_max = 20;
  double spacing_ratio = 0.5;  // d/gamma
  std::uint64_t rng_seed = 0;
};

/// ULA steering vector a(theta)(n) = exp(i 2 pi (d/gamma) n sin theta).
CVec steering_vector(double theta, int n, double spacing_ratio = 0.5);

/// Deterministic stream splitting: each (seed, stream) pair gets an
/// independent PRNG seed via two rounds of splitmix64. Stream ids are
/// user indices within one instance and trial indices across a batch.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

ProblemInstance generate_instance(const ChannelModelParams& params,
                                  const PowerConstraint& power,
                                  const Vec& noise_vars);

/// Convenience overload with sigma_m^2 = 1 for all users.
ProblemInstance generate_instance(const ChannelModelParams& params,
                                  const PowerConstraint& power);

}  // namespace mcbf
