#pragma once

#include "mcbf/sca.hpp"

namespace mcbf {

struct SelectionResult {
  std::vector<int> selected;  // sorted antenna indices, size K
  double lambda_final = 0.0;
  int t_repeat = 0;           // number of full SCA solves in the bisection
  BeamVector refit_beam;      // 2N vector, exactly zero outside `selected`
  double min_snr = 0.0;       // after refit, linear
  int total_sca_iters = 0;
  bool exact_hit = false;     // bisection terminated with S == K
};

/// lambda = 0 solve restricted to `selected` (2K-dimensional lift), embedded
/// back into the full 2N coordinates.
SolveReport refit_selected(const RealLiftedInstance& lift, const std::vector<int>& selected,
                           SolverKind solver, const SolverConfig& config);

/// Bisection on lambda until the solution support has size K, then refit on
/// the selected antennas. Larger lambda yields a smaller support, so S > K
/// raises lambda_lb and S < K lowers lambda_ub. If the step function S(lambda)
/// never hits K within max_bisection_steps, the candidate with the smallest
/// S >= K is truncated to its K largest groups (a dense lambda = 0 solve is
/// used if no such candidate was seen).
SelectionResult select_antennas(const RealLiftedInstance& lift, int k, SolverKind solver,
                                const SolverConfig& config);

}  // namespace mcbf
