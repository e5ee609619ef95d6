#pragma once

#include "mcbf/selection.hpp"

namespace mcbf {

/// Number of K-subsets of N, saturating at cap + 1 to avoid overflow.
std::int64_t subset_count(int n, int k, std::int64_t cap);

/// Exhaustive benchmark: solve the unregularized restricted problem on every
/// K-subset (all from the same seeded starting point) and keep the subset
/// with the best refit min-SNR; ties break to the lexicographically smallest
/// index set. Refuses when C(N,K) exceeds config.subset_cap. Subsets are
/// solved in parallel and reduced deterministically.
SelectionResult exhaustive_select(const RealLiftedInstance& lift, int k, SolverKind solver,
                                  const SolverConfig& config);

}  // namespace mcbf
