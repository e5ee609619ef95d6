#pragma once

#include "mcbf/surrogate.hpp"

namespace mcbf {

/// Saddle-point state blocks for the bilinear reformulation
/// min_{w in P} max_{y in simplex, s in group ball} y^T(Qw + b) + lambda s^T w.
struct SaddlePoint {
  Vec w;  // 2N, in P
  Vec y;  // M, probability simplex
  Vec s;  // 2N, every group norm <= 1
};

struct SaddleGradients {
  Vec g_w;  // Q^T y + lambda s
  Vec g_y;  // Q w + b
  Vec g_s;  // lambda w
};

SaddleGradients saddle_gradients(const SurrogateModel& surrogate, double lambda,
                                 const Vec& w, const Vec& y, const Vec& s);

/// KL/Bregman projection of a positive vector onto the simplex: plain l1
/// normalization (identity if already on the simplex).
Vec project_simplex_entropy(const Vec& y_raw);

/// Per-group radial projection onto the unit l2 ball (the l_inf,2 ball S).
Vec project_group_ball(const Vec& s_raw);

/// L = max(max_m ||q_m||_2, lambda); step alpha = 1/(2L). Returns 0 for the
/// degenerate all-zero subproblem.
double spmp_lipschitz(const SurrogateModel& surrogate, double lambda);

/// Primal value minus the concave dual lower bound at (y, s); the dual
/// linear minimization over P is closed form per group.
double spmp_gap(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                double lambda, const Vec& w, const Vec& y, const Vec& s);

/// Nemirovski mirror-prox on the product set P x simplex x S: Euclidean
/// extragradient steps with ball projections on the w and s blocks, an
/// entropic multiplicative update with normalization on the y block.
/// Returns the ergodic average unless the last iterate has a better true
/// subproblem objective.
class MirrorProxSolver final : public SubproblemSolver {
 public:
  void reset() override {}
  Vec solve(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
            double lambda, const Vec& warm, const SolverConfig& config) override;
  std::string name() const override { return "spmp"; }
};

/// Estimated ergodic gap after exactly `iters` mirror-prox iterations;
/// used to check the O(1/t) decay property.
double mirror_prox_gap_at(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                          double lambda, const Vec& w0, int iters);

}  // namespace mcbf
