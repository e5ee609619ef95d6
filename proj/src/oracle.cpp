#include "mcbf/oracle.hpp"

#include <omp.h>

#include <algorithm>

namespace mcbf {

std::int64_t subset_count(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

namespace {

std::vector<std::vector<int>> enumerate_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

SelectionResult exhaustive_select(const RealLiftedInstance& lift, int k, SolverKind solver,
                                  const SolverConfig& config) {
  const int n = lift.antennas();
  if (k < 1 || k > n) throw InvalidInstance("K must be in [1, N]");
  const std::int64_t count = subset_count(n, k, config.subset_cap);
  if (count > config.subset_cap)
    throw InvalidInstance("exhaustive search refused: C(N,K) exceeds cap (" +
                          std::to_string(count) + " > " + std::to_string(config.subset_cap) + ")");

  const auto subsets = enumerate_subsets(n, k);
  std::vector<double> snr(subsets.size());
  std::vector<int> iters(subsets.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(subsets.size()); ++i) {
    SolveReport rep = refit_selected(lift, subsets[i], solver, config);
    snr[i] = rep.min_snr;
    iters[i] = rep.sca_iters;
  }

  // deterministic reduction: max SNR, ties to the lexicographically smallest
  // subset, which is the earliest one in enumeration order
  std::size_t best = 0;
  for (std::size_t i = 1; i < subsets.size(); ++i)
    if (snr[i] > snr[best]) best = i;

  SelectionResult result;
  result.selected = subsets[best];
  result.lambda_final = 0.0;
  result.t_repeat = static_cast<int>(subsets.size());
  result.exact_hit = true;
  for (int it : iters) result.total_sca_iters += it;
  SolveReport refit = refit_selected(lift, result.selected, solver, config);
  result.refit_beam = refit.final_beam;
  result.min_snr = refit.min_snr;
  return result;
}

}  // namespace mcbf
