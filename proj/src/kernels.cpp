#include "mcbf/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>

namespace mcbf {

void batch_quad_values_serial(const Mat& u, const Mat& v, const Mat& w_batch, Mat& out) {
  out.resize(u.rows(), w_batch.cols());
  for (int b = 0; b < w_batch.cols(); ++b) {
    const Vec a = u * w_batch.col(b);
    const Vec c = v * w_batch.col(b);
    out.col(b) = a.cwiseProduct(a) + c.cwiseProduct(c);
  }
}

void batch_quad_values_omp(const Mat& u, const Mat& v, const Mat& w_batch, Mat& out) {
  out.resize(u.rows(), w_batch.cols());
#pragma omp parallel for schedule(static)
  for (int b = 0; b < w_batch.cols(); ++b) {
    const Vec a = u * w_batch.col(b);
    const Vec c = v * w_batch.col(b);
    out.col(b) = a.cwiseProduct(a) + c.cwiseProduct(c);
  }
}

void batch_group_norms_serial(const Mat& w_batch, Mat& out) {
  const int n = static_cast<int>(w_batch.rows()) / 2;
  out.resize(n, w_batch.cols());
  for (int b = 0; b < w_batch.cols(); ++b)
    for (int j = 0; j < n; ++j)
      out(j, b) = std::hypot(w_batch(j, b), w_batch(j + n, b));
}

void batch_group_norms_omp(const Mat& w_batch, Mat& out) {
  const int n = static_cast<int>(w_batch.rows()) / 2;
  out.resize(n, w_batch.cols());
#pragma omp parallel for schedule(static)
  for (int b = 0; b < w_batch.cols(); ++b)
    for (int j = 0; j < n; ++j)
      out(j, b) = std::hypot(w_batch(j, b), w_batch(j + n, b));
}

void apply_worker_env() {
  if (const char* env = std::getenv("MCBF_WORKERS")) {
    const int workers = std::atoi(env);
    if (workers > 0) omp_set_num_threads(workers);
  }
}

}  // namespace mcbf
