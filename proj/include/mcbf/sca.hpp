#pragma once

#include "mcbf/surrogate.hpp"

namespace mcbf {

/// Outer SCA loop: majorize f1 at the current iterate, delegate the convex
/// subproblem to `solver` (warm-started from the previous iterate), accept
/// only descent steps, stop on relative objective change or the iteration
/// cap. The objective trace is monotonically non-increasing by construction;
/// a violation beyond slack aborts with diagnostics.
SolveReport sca_solve(const RealLiftedInstance& lift, double lambda,
                      SubproblemSolver& solver, const Vec& w0,
                      const SolverConfig& config);

}  // namespace mcbf
