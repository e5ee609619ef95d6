// Timing comparison of the serial reference kernels against the OpenMP
// variants. Sizes loosely follow the massive-MIMO scenario (M=50, 2N up to
// 600) with a large batch standing in for Monte-Carlo trials.

#include <chrono>
#include <cstdio>
#include <random>

#include "mcbf/kernels.hpp"

using mcbf::Mat;

namespace {

Mat random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

template <typename F>
double time_ms(F&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  mcbf::apply_worker_env();
  const int m = 50, dim = 600, batch = 256, reps = 20;
  const Mat u = random_matrix(m, dim, 1);
  const Mat v = random_matrix(m, dim, 2);
  const Mat w = random_matrix(dim, batch, 3);

  Mat out_serial, out_omp;
  const double quad_serial =
      time_ms([&] { mcbf::batch_quad_values_serial(u, v, w, out_serial); }, reps);
  const double quad_omp =
      time_ms([&] { mcbf::batch_quad_values_omp(u, v, w, out_omp); }, reps);
  const double quad_diff = (out_serial - out_omp).cwiseAbs().maxCoeff();

  Mat gn_serial, gn_omp;
  const double norms_serial =
      time_ms([&] { mcbf::batch_group_norms_serial(w, gn_serial); }, reps);
  const double norms_omp = time_ms([&] { mcbf::batch_group_norms_omp(w, gn_omp); }, reps);
  const double norms_diff = (gn_serial - gn_omp).cwiseAbs().maxCoeff();

  std::printf("kernel              serial_ms   omp_ms   speedup  max_abs_diff\n");
  std::printf("batch_quad_values   %9.3f %8.3f %9.2fx %12.3e\n", quad_serial, quad_omp,
              quad_serial / quad_omp, quad_diff);
  std::printf("batch_group_norms   %9.3f %8.3f %9.2fx %12.3e\n", norms_serial, norms_omp,
              norms_serial / norms_omp, norms_diff);
  return (quad_diff < 1e-12 && norms_diff < 1e-12) ? 0 : 1;
}
