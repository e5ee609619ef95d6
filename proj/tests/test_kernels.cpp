#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mcbf/kernels.hpp"
#include "mcbf/lift.hpp"

using namespace mcbf;

namespace {

Mat random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

}  // namespace

TEST_CASE("batch quad values: OpenMP matches the serial reference") {
  const Mat u = random_matrix(12, 16, 1);
  const Mat v = random_matrix(12, 16, 2);
  const Mat w = random_matrix(16, 33, 3);
  Mat serial, parallel;
  batch_quad_values_serial(u, v, w, serial);
  batch_quad_values_omp(u, v, w, parallel);
  CHECK((serial - parallel).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("batch group norms: OpenMP matches the serial reference") {
  const Mat w = random_matrix(20, 17, 4);
  Mat serial, parallel;
  batch_group_norms_serial(w, serial);
  batch_group_norms_omp(w, parallel);
  CHECK((serial - parallel).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("batch quad values agree with the lift evaluation") {
  const Mat u = random_matrix(5, 8, 5);
  const Mat v = random_matrix(5, 8, 6);
  RealLiftedInstance lift(u, v, PowerConstraint::sum(1.0));
  const Mat w = random_matrix(8, 4, 7);
  Mat out;
  batch_quad_values_serial(u, v, w, out);
  for (int b = 0; b < 4; ++b)
    CHECK((out.col(b) - lift.quad_values(w.col(b))).cwiseAbs().maxCoeff() < 1e-14);
}
