#pragma once

#include "mcbf/types.hpp"

namespace mcbf {

// Data-parallel inner kernels with a serial reference kept for testing;
// tools/bench_kernels.cpp compares the two. The OpenMP variants are used on
// the large batched paths (Monte-Carlo trials, exhaustive subsets); thread
// count follows OMP_NUM_THREADS / MCBF_WORKERS.

/// Per-user lifted quadratics (U w)^2 + (V w)^2 for a batch of beams (one
/// column per beam); out is M x B.
void batch_quad_values_serial(const Mat& u, const Mat& v, const Mat& w_batch, Mat& out);
void batch_quad_values_omp(const Mat& u, const Mat& v, const Mat& w_batch, Mat& out);

/// Group norms for a batch of 2N beams; out is N x B.
void batch_group_norms_serial(const Mat& w_batch, Mat& out);
void batch_group_norms_omp(const Mat& w_batch, Mat& out);

/// Worker count from MCBF_WORKERS (falls back to the OpenMP default);
/// call once at process start.
void apply_worker_env();

}  // namespace mcbf
