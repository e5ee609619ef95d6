#include "mcbf/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mcbf {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  (void)splitmix64(state);
  state ^= stream * 0xD6E8FEB86659FD93ULL;
  return splitmix64(state);
}

CVec steering_vector(double theta, int n, double spacing_ratio) {
  CVec a(n);
  const double phase = 2.0 * std::numbers::pi * spacing_ratio * std::sin(theta);
  for (int i = 0; i < n; ++i)
    a[i] = std::polar(1.0, phase * static_cast<double>(i));
  return a;
}

ProblemInstance generate_instance(const ChannelModelParams& params,
                                  const PowerConstraint& power,
                                  const Vec& noise_vars) {
  if (params.paths_min < 1 || params.paths_min > params.paths_max)
    throw InvalidInstance("invalid scattering path range");
  ProblemInstance inst;
  inst.N = params.N;
  inst.M = params.M;
  inst.noise_vars = noise_vars;
  inst.power = power;
  inst.channels.reserve(params.M);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < params.M; ++m) {
    std::mt19937_64 rng(substream_seed(params.rng_seed, static_cast<std::uint64_t>(m)));
    std::uniform_int_distribution<int> paths(params.paths_min, params.paths_max);
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2.0,
                                                 std::numbers::pi / 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int L = paths(rng);
    CVec h = CVec::Zero(params.N);
    const double scale = std::sqrt(static_cast<double>(params.N) / L);
    for (int l = 0; l < L; ++l) {
      // CN(0,1): independent real/imag parts with variance 1/2 each
      const std::complex<double> alpha(gauss(rng) * inv_sqrt2, gauss(rng) * inv_sqrt2);
      const double theta = angle(rng);
      h += scale * alpha * steering_vector(theta, params.N, params.spacing_ratio);
    }
    inst.channels.push_back(std::move(h));
  }
  inst.validate();
  return inst;
}

ProblemInstance generate_instance(const ChannelModelParams& params,
                                  const PowerConstraint& power) {
  return generate_instance(params, power, Vec::Ones(params.M));
}

}  // namespace mcbf
