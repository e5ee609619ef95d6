#pragma once

#include "mcbf/surrogate.hpp"

namespace mcbf {

/// Group soft-thresholding: per group j, x_j <- (1 - t/||x_j||)_+ x_j.
/// This is prox of t * ||.||_{1,2}; groups at or inside the threshold
/// become exactly zero.
Vec prox_group_l12(const Vec& x, double threshold);

/// Log-sum-exp smoothing of the piecewise-linear majorizer:
/// value = mu * logsumexp((Qw + b)/mu) - mu log M, gradient = Q^T softmax.
/// Computed with max subtraction, safe for entries up to ~1e8.
struct SmoothedPwl {
  double value;
  Vec gradient;
};
SmoothedPwl smoothed_pwl(const SurrogateModel& surrogate, const Vec& w, double mu);

/// Spectral norm ||Q||_2 by power iteration (50 iterations or 1e-8 relative
/// change on the Rayleigh quotient).
double spectral_norm(const Mat& q, std::uint64_t seed = 12345);

/// Accelerated gradient minimization of
///   f_mu(w) = mu logsumexp((Qw+b)/mu) - mu log M + (1/2 rho) ||w - x||^2,
/// step 1/L with L = 1/rho + ||Q||_2^2 / mu, momentum from the strong
/// convexity modulus tau = 1/rho. Starts from w_init (the consensus mean).
Vec prox_g1_accel(const SurrogateModel& surrogate, const Vec& x, double rho, double mu,
                  double eps_mu, const Vec& w_init, int max_iters, double norm_q,
                  bool* converged = nullptr);

/// Three-block consensus ADMM for one SCA subproblem:
/// g1 = smoothed majorizer (prox via accelerated gradient), g2 = lambda
/// group norm (soft threshold), g3 = indicator of the power set (projection).
/// Local copies and duals persist across calls for warm starting; only the
/// surrogate changes between SCA iterations.
class AdmmSolver final : public SubproblemSolver {
 public:
  void reset() override { initialized_ = false; }
  Vec solve(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
            double lambda, const Vec& warm, const SolverConfig& config) override;
  std::string name() const override { return "admm"; }

 private:
  bool initialized_ = false;
  Vec w1_, w2_, w3_, v1_, v2_, v3_;
};

}  // namespace mcbf
