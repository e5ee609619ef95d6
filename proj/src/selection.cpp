#include "mcbf/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcbf/channel.hpp"

namespace mcbf {

namespace {

double power_scale(const PowerConstraint& power) {
  return power.kind == PowerConstraint::Kind::SumPower ? std::sqrt(power.total)
                                                       : std::sqrt(power.per.sum());
}

/// Largest t such that t*w stays feasible (w itself feasible).
double max_uniform_scale(const Vec& w, const PowerConstraint& power) {
  if (power.kind == PowerConstraint::Kind::SumPower) {
    const double nrm = w.norm();
    return nrm > 0.0 ? std::sqrt(power.total) / nrm : 1.0;
  }
  const int n = static_cast<int>(w.size()) / 2;
  double t = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const double nrm = std::hypot(w[j], w[j + n]);
    if (nrm > 0.0) t = std::min(t, std::sqrt(power.per[j]) / nrm);
  }
  return std::isfinite(t) ? t : 1.0;
}

std::vector<int> top_k_groups(const BeamVector& beam, int k) {
  const Vec g = beam.group_norms();
  std::vector<int> idx(g.size());
  for (int j = 0; j < g.size(); ++j) idx[j] = j;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return g[a] > g[b]; });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

SolveReport refit_selected(const RealLiftedInstance& lift, const std::vector<int>& selected,
                           SolverKind solver, const SolverConfig& config) {
  if (selected.empty()) throw InvalidInstance("empty selection for refit");
  const RealLiftedInstance restricted = lift.restrict_to(selected);
  auto sub = make_solver(solver);
  const Vec w0 = random_feasible_point(restricted, config.rng_seed);
  SolveReport report = sca_solve(restricted, 0.0, *sub, w0, config);
  report.final_beam.values = lift.embed(report.final_beam.values, selected);
  report.selected_antennas = selected;
  return report;
}

SelectionResult select_antennas(const RealLiftedInstance& lift, int k, SolverKind solver,
                                const SolverConfig& config) {
  const int n = lift.antennas();
  if (k < 1 || k > n) throw InvalidInstance("K must be in [1, N]");
  config.validate();

  SelectionResult result;
  auto sub = make_solver(solver);

  if (k == n) {
    // every antenna stays on; a single unregularized solve suffices
    const Vec w0 = random_feasible_point(lift, config.rng_seed);
    SolveReport rep = sca_solve(lift, 0.0, *sub, w0, config);
    result.t_repeat = 1;
    result.total_sca_iters = rep.sca_iters;
    result.lambda_final = 0.0;
    result.exact_hit = true;
    std::vector<int> all(n);
    for (int j = 0; j < n; ++j) all[j] = j;
    result.selected = all;
    result.refit_beam = rep.final_beam;
    result.min_snr = rep.min_snr;
    return result;
  }

  double lo = config.lambda_lb;
  double hi = config.lambda_ub;
  const Vec w0 = random_feasible_point(lift, config.rng_seed);
  Vec warm = w0;

  // every non-collapsed iterate proposes a candidate subset (its top-K group
  // norms); candidates are scored cheaply by the min SNR of the truncated
  // beam rescaled to the power budget, and only the best few get a refit
  struct Candidate {
    std::vector<int> subset;
    double lambda;
    double score;
  };
  std::vector<Candidate> candidates;
  auto propose = [&](const BeamVector& beam, double lambda) {
    std::vector<int> subset = top_k_groups(beam, k);
    Vec trunc = Vec::Zero(beam.values.size());
    for (int j : subset) {
      trunc[j] = beam.values[j];
      trunc[j + n] = beam.values[j + n];
    }
    const double score = eval_min_snr(lift, trunc * max_uniform_scale(trunc, lift.power()));
    for (auto& c : candidates) {
      if (c.subset != subset) continue;
      if (score > c.score) {
        c.score = score;
        c.lambda = lambda;
      }
      return;
    }
    candidates.push_back({std::move(subset), lambda, score});
  };

  bool hit = false;
  BeamVector hit_beam;
  double hit_lambda = 0.0;

  // the configured upper bound is only a starting guess: on badly scaled
  // instances the penalty may not zero anything at lambda_ub, so probe the
  // bound first and expand it geometrically until it actually brackets
  bool bracketed = false;
  for (int step = 0; step < config.max_bisection_steps; ++step) {
    const double lambda = bracketed ? 0.5 * (lo + hi) : hi;
    if (!config.warm_start_bisection)
      warm = random_feasible_point(lift, substream_seed(config.rng_seed, step));
    SolveReport rep = sca_solve(lift, lambda, *sub, warm, config);
    ++result.t_repeat;
    result.total_sca_iters += rep.sca_iters;
    if (config.warm_start_bisection) warm = rep.final_beam.values;

    // a beam that collapsed to numerical zero has empty support, even though
    // a threshold relative to its own max norm would count every group active
    const bool collapsed = rep.final_beam.values.norm() <= 1e-6 * power_scale(lift.power());
    const int s = collapsed ? 0 : rep.final_beam.cardinality(config.sparsity_rel_threshold);
    if (!collapsed) propose(rep.final_beam, lambda);
    if (s == k) {
      hit = true;
      hit_beam = rep.final_beam;
      hit_lambda = lambda;
      break;
    }
    if (s > k) {
      if (bracketed) {
        lo = lambda;
      } else {
        lo = hi;
        hi *= 2.0;
      }
    } else {
      hi = lambda;
      bracketed = true;
    }
  }

  // an exact cardinality hit ends the bisection, but its support still has to
  // beat the other proposals on refit quality to be the returned selection
  result.exact_hit = hit;
  if (hit) propose(hit_beam, hit_lambda);

  if (candidates.empty()) {
    // never saw a dense-enough solution; take the unregularized one
    // (not counted in t_repeat, which tracks bisection steps only)
    SolveReport rep = sca_solve(lift, 0.0, *sub, w0, config);
    result.total_sca_iters += rep.sca_iters;
    propose(rep.final_beam, 0.0);
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  const int refits = std::min<int>(config.refit_candidates, candidates.size());
  bool first = true;
  for (int i = 0; i < refits; ++i) {
    // the final beam always comes from a mirror-prox refit, whichever solver
    // drove the bisection
    SolveReport refit = refit_selected(lift, candidates[i].subset, SolverKind::Spmp, config);
    result.total_sca_iters += refit.sca_iters;
    if (first || refit.min_snr > result.min_snr) {
      result.selected = candidates[i].subset;
      result.lambda_final = candidates[i].lambda;
      result.refit_beam = refit.final_beam;
      result.min_snr = refit.min_snr;
      first = false;
    }
  }
  return result;
}

}  // namespace mcbf
