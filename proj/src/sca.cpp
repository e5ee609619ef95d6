#include "mcbf/sca.hpp"

#include <chrono>
#include <cmath>

namespace mcbf {

SolveReport sca_solve(const RealLiftedInstance& lift, double lambda,
                      SubproblemSolver& solver, const Vec& w0,
                      const SolverConfig& config) {
  config.validate();
  if (w0.size() != lift.dim()) throw InvalidInstance("w0 dimension mismatch");
  if (!in_power_set(w0, lift.power()))
    throw InvalidInstance("w0 is not feasible for the power constraint");

  const auto t_start = std::chrono::steady_clock::now();
  solver.reset();

  SolveReport report;
  report.solver = solver.name();
  report.lambda_final = lambda;

  Vec w = w0;
  double f = eval_objective(lift, w, lambda);
  report.objective_trace.push_back(f);

  for (int t = 0; t < config.max_sca_iters; ++t) {
    const SurrogateModel surrogate = build_surrogate(lift, w);
    Vec cand;
    try {
      cand = solver.solve(surrogate, lift, lambda, w, config);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " [SCA iteration " + std::to_string(t) + "]");
    }
    cand = project_power_set(cand, lift.power());

    // accept only if the candidate improves the convex surrogate objective;
    // A3/A4 then force F(cand) <= F(w), so the trace cannot increase even
    // when the inner solver stops early
    if (surrogate.objective(cand, lambda) > surrogate.objective(w, lambda)) {
      report.sca_iters = t;
      break;
    }

    const double f_next = eval_objective(lift, cand, lambda);
    const double slack = std::max(1e-9, 1e-12 * std::abs(f));
    if (f_next > f + slack)
      throw SolverError("SCA descent violated at iteration " + std::to_string(t) +
                        ": " + std::to_string(f) + " -> " + std::to_string(f_next));

    const double step = (cand - w).norm();
    w = std::move(cand);
    report.objective_trace.push_back(f_next);
    report.sca_iters = t + 1;

    const bool stalled = std::abs(f - f_next) <= config.eps_outer * std::max(1.0, std::abs(f));
    f = f_next;
    if (stalled || step <= 1e-9) break;
  }

  report.final_beam.values = w;
  report.min_snr = eval_min_snr(lift, w);
  report.min_snr_db = 10.0 * std::log10(std::max(report.min_snr, 1e-300));
  report.selected_antennas = report.final_beam.support(config.sparsity_rel_threshold);
  report.wall_solve_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start)
                             .count();
  return report;
}

}  // namespace mcbf
