#pragma once

#include <memory>

#include "mcbf/lift.hpp"

namespace mcbf {

/// Piecewise-affine majorizer of f1 at the current SCA iterate: each concave
/// quadratic wbar^T Abar_m wbar is linearized into q_m^T wbar + b_m with
/// q_m = 2 Abar_m wbar_t and b_m = -wbar_t^T Abar_m wbar_t.
struct SurrogateModel {
  Mat Q;     // M x 2N, rows q_m^T
  Vec b;     // M
  Vec base;  // wbar_t

  /// u(w, base) = max_m (q_m^T w + b_m)
  double value(const Vec& w) const { return (Q * w + b).maxCoeff(); }

  /// Full subproblem objective u(w) + lambda ||w||_{1,2}.
  double objective(const Vec& w, double lambda) const {
    return value(w) + lambda * group_l12_norm(w);
  }
};

SurrogateModel build_surrogate(const RealLiftedInstance& lift, const Vec& w_t);

/// Seam between the SCA outer loop and the two interchangeable first-order
/// subproblem solvers. Implementations may keep warm-start state across
/// calls within one SCA run; reset() clears it. Instances are not shareable
/// across concurrent runs.
class SubproblemSolver {
 public:
  virtual ~SubproblemSolver() = default;
  virtual void reset() = 0;
  virtual Vec solve(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                    double lambda, const Vec& warm, const SolverConfig& config) = 0;
  virtual std::string name() const = 0;
};

enum class SolverKind { Admm, Spmp };

std::unique_ptr<SubproblemSolver> make_solver(SolverKind kind);
SolverKind parse_solver_kind(const std::string& name);

}  // namespace mcbf
