#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcbf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;

struct InvalidInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Power constraint set: either a single sum-power budget ||w||^2 <= P
/// or per-antenna budgets |w(i)|^2 <= P_i.
struct PowerConstraint {
  enum class Kind { SumPower, PerAntenna };
  Kind kind = Kind::SumPower;
  double total = 1.0;  // SumPower budget P
  Vec per;             // PerAntenna budgets P_i, length N

  static PowerConstraint sum(double p) {
    if (p <= 0.0) throw InvalidInstance("sum power budget must be positive");
    PowerConstraint c;
    c.kind = Kind::SumPower;
    c.total = p;
    return c;
  }

  static PowerConstraint per_antenna(Vec p) {
    if (p.size() == 0 || (p.array() <= 0.0).any())
      throw InvalidInstance("per-antenna budgets must be positive");
    PowerConstraint c;
    c.kind = Kind::PerAntenna;
    c.per = std::move(p);
    return c;
  }

  static PowerConstraint per_antenna_uniform(int n, double p) {
    return per_antenna(Vec::Constant(n, p));
  }
};

/// Downlink multicast instance: M user channels over N antennas plus the
/// per-user noise variances and the transmit power constraint.
struct ProblemInstance {
  int N = 0;
  int M = 0;
  std::vector<CVec> channels;  // h_m, each length N
  Vec noise_vars;              // sigma_m^2 > 0, length M
  PowerConstraint power;

  void validate() const;
};

/// Candidate beamforming vector in the real 2N lift. Group j pairs
/// coordinates (j, j+N), the real and imaginary parts of antenna j.
struct BeamVector {
  Vec values;  // length 2N

  int antennas() const { return static_cast<int>(values.size()) / 2; }

  double group_norm(int j) const {
    const int n = antennas();
    return std::hypot(values[j], values[j + n]);
  }

  Vec group_norms() const {
    const int n = antennas();
    Vec g(n);
    for (int j = 0; j < n; ++j) g[j] = group_norm(j);
    return g;
  }

  /// Number of groups whose norm exceeds rel_threshold * max group norm.
  int cardinality(double rel_threshold) const;

  /// Indices of the active groups under the same relative threshold.
  std::vector<int> support(double rel_threshold) const;
};

struct SolverConfig {
  double eps_outer = 1e-5;            // relative SCA objective tolerance
  int max_inner_iters = 1000;         // cap per convex subproblem
  int max_sca_iters = 15;
  double admm_rho = 0.1;
  double smoothing_mu = 1e-2;
  double inner_eps = 1e-5;
  double sparsity_rel_threshold = 1e-6;
  double lambda_lb = 0.0;
  double lambda_ub = 1.0;
  int max_bisection_steps = 30;
  int refit_candidates = 6;           // candidate subsets refit after bisection
  std::uint64_t rng_seed = 0;

  int accel_max_iters = 500;          // cap for the smoothed-prox inner loop
  bool warm_start_bisection = false;  // reuse iterates across lambda steps
  std::int64_t subset_cap = 100000;   // exhaustive-search refusal threshold

  void validate() const {
    if (eps_outer <= 0 || inner_eps <= 0 || admm_rho <= 0 || smoothing_mu <= 0 ||
        sparsity_rel_threshold <= 0)
      throw InvalidInstance("tolerances must be positive");
    if (lambda_lb >= lambda_ub) throw InvalidInstance("lambda_lb must be < lambda_ub");
    if (max_inner_iters < 1 || max_sca_iters < 1 || max_bisection_steps < 1 ||
        accel_max_iters < 1 || refit_candidates < 1)
      throw InvalidInstance("iteration caps must be >= 1");
  }
};

struct SolveReport {
  BeamVector final_beam;
  std::vector<double> objective_trace;  // F(w^(t)) per SCA iteration, incl. start
  double min_snr = 0.0;                 // linear
  double min_snr_db = 0.0;
  std::vector<int> selected_antennas;
  int t_repeat = 0;                     // bisection step count (selection runs)
  int sca_iters = 0;
  double lambda_final = 0.0;
  double wall_solve_ms = 0.0;
  std::string solver;
  bool converged = true;
};

}  // namespace mcbf
