#pragma once

#include "mcbf/types.hpp"

namespace mcbf {

/// Real 2N-dimensional lift of a complex instance.
///
/// The per-user SNR quadratic |h_m^H w|^2 / sigma_m^2 equals
/// (u_m . wbar)^2 + (v_m . wbar)^2 with u_m = [Re h_m; Im h_m]/sigma_m and
/// v_m = [-Im h_m; Re h_m]/sigma_m, so the lifted PSD matrix
/// Atil_m = u_m u_m^T + v_m v_m^T is never materialized; every quadratic
/// and gradient evaluation costs O(N) per user.
class RealLiftedInstance {
 public:
  RealLiftedInstance() = default;
  RealLiftedInstance(Mat u, Mat v, PowerConstraint power);

  int users() const { return static_cast<int>(u_.rows()); }
  int antennas() const { return static_cast<int>(u_.cols()) / 2; }
  int dim() const { return static_cast<int>(u_.cols()); }
  const PowerConstraint& power() const { return power_; }
  const Mat& u() const { return u_; }
  const Mat& v() const { return v_; }

  /// Per-user values wbar^T Atil_m wbar (all >= 0).
  Vec quad_values(const Vec& w) const;

  /// Restriction to a subset of antennas (dimension 2K lift).
  RealLiftedInstance restrict_to(const std::vector<int>& selected) const;

  /// Embed a 2K vector from restrict_to(selected) back into 2N coordinates.
  Vec embed(const Vec& restricted, const std::vector<int>& selected) const;

 private:
  Mat u_, v_;  // M x 2N lifted channel factors
  PowerConstraint power_;
};

RealLiftedInstance lift_to_real(const ProblemInstance& inst);

/// Group l1,2 norm: sum over antennas of ||(w(j), w(j+N))||_2.
double group_l12_norm(const Vec& w);

/// min_m wbar^T Atil_m wbar, the worst-user SNR.
double eval_min_snr(const RealLiftedInstance& lift, const Vec& w);

/// f1 + f2 = max_m wbar^T Abar_m wbar + lambda ||wbar||_{1,2}
///         = -min_m quad_m(wbar) + lambda ||wbar||_{1,2}.
double eval_objective(const RealLiftedInstance& lift, const Vec& w, double lambda);

/// Euclidean projection onto the power constraint set P.
Vec project_power_set(const Vec& w_raw, const PowerConstraint& power);

bool in_power_set(const Vec& w, const PowerConstraint& power, double tol = 1e-9);

/// Seeded complex-Gaussian starting point projected onto P.
Vec random_feasible_point(const RealLiftedInstance& lift, std::uint64_t seed);

}  // namespace mcbf
