#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mcbf/spmp.hpp"

using namespace mcbf;

namespace {

RealLiftedInstance random_lift(int n, int m, std::uint64_t seed,
                               PowerConstraint power = PowerConstraint::sum(10.0)) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ProblemInstance inst;
  inst.N = n;
  inst.M = m;
  inst.noise_vars = Vec::Ones(m);
  inst.power = power;
  for (int i = 0; i < m; ++i) {
    CVec h(n);
    for (int j = 0; j < n; ++j) h[j] = {gauss(rng), gauss(rng)};
    inst.channels.push_back(h);
  }
  return lift_to_real(inst);
}

SurrogateModel random_surrogate(int m, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SurrogateModel s;
  s.Q.resize(m, dim);
  s.b.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < dim; ++j) s.Q(i, j) = gauss(rng);
    s.b[i] = gauss(rng);
  }
  s.base = Vec::Zero(dim);
  return s;
}

Vec random_vec(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  return v;
}

Vec random_simplex(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Vec y(m);
  for (int i = 0; i < m; ++i) y[i] = uni(rng);
  return y / y.sum();
}

}  // namespace

TEST_CASE("saddle_gradients: lambda 0 zeroes the s block") {
  auto s = random_surrogate(4, 6, 1);
  Vec w = random_vec(6, 2), sv = random_vec(6, 3);
  Vec y = random_simplex(4, 4);
  auto g = saddle_gradients(s, 0.0, w, y, sv);
  CHECK((g.g_w - s.Q.transpose() * y).norm() < 1e-14);
  CHECK(g.g_s.norm() == 0.0);
}

TEST_CASE("saddle_gradients: simplex vertex picks out one row") {
  auto s = random_surrogate(4, 6, 5);
  Vec w = random_vec(6, 6), sv = random_vec(6, 7);
  Vec y = Vec::Zero(4);
  y[2] = 1.0;
  const double lambda = 0.3;
  auto g = saddle_gradients(s, lambda, w, y, sv);
  CHECK((g.g_w - (s.Q.row(2).transpose() + lambda * sv)).norm() < 1e-14);
}

TEST_CASE("saddle_gradients: match finite differences of phi") {
  auto s = random_surrogate(3, 4, 9);
  const double lambda = 0.5;
  Vec w = random_vec(4, 10), sv = random_vec(4, 11);
  Vec y = random_simplex(3, 12);
  auto phi = [&](const Vec& ww, const Vec& yy, const Vec& ss) {
    return yy.dot(s.Q * ww + s.b) + lambda * ss.dot(ww);
  };
  auto g = saddle_gradients(s, lambda, w, y, sv);
  const double h = 1e-6;
  for (int i = 0; i < 4; ++i) {
    Vec wp = w, wm = w;
    wp[i] += h;
    wm[i] -= h;
    CHECK(g.g_w[i] == doctest::Approx((phi(wp, y, sv) - phi(wm, y, sv)) / (2 * h))
                          .epsilon(1e-6));
    Vec sp = sv, sm = sv;
    sp[i] += h;
    sm[i] -= h;
    CHECK(g.g_s[i] == doctest::Approx((phi(w, y, sp) - phi(w, y, sm)) / (2 * h))
                          .epsilon(1e-6));
  }
  for (int i = 0; i < 3; ++i) {
    Vec yp = y, ym = y;
    yp[i] += h;
    ym[i] -= h;
    CHECK(g.g_y[i] == doctest::Approx((phi(w, yp, sv) - phi(w, ym, sv)) / (2 * h))
                          .epsilon(1e-6));
  }
}

TEST_CASE("phi bilinearity: stacked and block evaluations agree") {
  auto s = random_surrogate(3, 8, 13);
  const double lambda = 0.7;
  Vec w = random_vec(8, 14), sv = random_vec(8, 15);
  Vec y = random_simplex(3, 16);
  // stacked: x^T (Qbar w + bbar) with Qbar = [Q; lambda I], bbar = [b; 0]
  const double stacked = y.dot(s.Q * w + s.b) + sv.dot(lambda * w);
  const double blocks = y.dot(s.Q * w) + y.dot(s.b) + lambda * sv.dot(w);
  CHECK(stacked == doctest::Approx(blocks).epsilon(1e-12));
}

TEST_CASE("project_simplex_entropy: normalization and fixed points") {
  Vec y(2);
  y << 0.2, 0.3;
  Vec p = project_simplex_entropy(y);
  CHECK(p[0] == doctest::Approx(0.4));
  CHECK(p[1] == doctest::Approx(0.6));

  Vec on(3);
  on << 0.2, 0.3, 0.5;
  CHECK((project_simplex_entropy(on) - on).norm() < 1e-15);

  Vec bad(2);
  bad << 1.0, -0.1;
  CHECK_THROWS_AS(project_simplex_entropy(bad), SolverError);
}

TEST_CASE("project_simplex_entropy: minimizes KL divergence on a fine grid") {
  Vec y(2);
  y << 0.7, 0.2;
  Vec p = project_simplex_entropy(y);
  auto kl = [&](double a) {
    const double b = 1.0 - a;
    return a * std::log(a / y[0]) + b * std::log(b / y[1]) - (a + b) + y.sum();
  };
  double best_a = 0.5, best_v = kl(0.5);
  for (int i = 1; i < 100000; ++i) {
    const double a = static_cast<double>(i) / 100000;
    if (kl(a) < best_v) {
      best_v = kl(a);
      best_a = a;
    }
  }
  CHECK(p[0] == doctest::Approx(best_a).epsilon(1e-4));
}

TEST_CASE("project_group_ball: hand cases and idempotence") {
  Vec s(2);
  s << 0.6, 0.8;
  CHECK((project_group_ball(s) - s).norm() == 0.0);

  Vec big(2);
  big << 3.0, 4.0;
  Vec p = project_group_ball(big);
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));

  for (int trial = 0; trial < 100; ++trial) {
    Vec x = 3.0 * random_vec(12, 400 + trial);
    Vec p1 = project_group_ball(x);
    CHECK((project_group_ball(p1) - p1).norm() < 1e-15);
  }
}

TEST_CASE("spmp_lipschitz: formula and degenerate signal") {
  SurrogateModel s;
  s.Q = Mat::Zero(2, 4);
  s.Q.row(0).setConstant(1.0);   // norm 2
  s.Q.row(1).setConstant(1.5);   // norm 3
  s.b = Vec::Zero(2);
  CHECK(spmp_lipschitz(s, 5.0) == doctest::Approx(5.0));
  CHECK(spmp_lipschitz(s, 0.0) == doctest::Approx(3.0));

  SurrogateModel z;
  z.Q = Mat::Zero(1, 4);
  z.b = Vec::Zero(1);
  CHECK(spmp_lipschitz(z, 0.0) == 0.0);
}

TEST_CASE("mirror_prox_solve: degenerate subproblem returns the warm point") {
  auto lift = random_lift(2, 1, 17);
  SurrogateModel s;
  s.Q = Mat::Zero(1, 4);
  s.b = Vec::Zero(1);
  s.base = Vec::Zero(4);
  MirrorProxSolver solver;
  SolverConfig cfg;
  Vec warm = random_feasible_point(lift, 18);
  CHECK((solver.solve(s, lift, 0.0, warm, cfg) - warm).norm() == 0.0);
}

TEST_CASE("mirror_prox_solve: zero surrogate with lambda > 0 returns zero") {
  auto lift = random_lift(3, 2, 19);
  SurrogateModel s;
  s.Q = Mat::Zero(2, 6);
  s.b = Vec::Zero(2);
  s.base = Vec::Zero(6);
  MirrorProxSolver solver;
  SolverConfig cfg;
  Vec w = solver.solve(s, lift, 0.5, random_feasible_point(lift, 20), cfg);
  CHECK(w.norm() < 1e-3);
}

TEST_CASE("mirror_prox_solve: feasible output on both constraint kinds") {
  for (auto power : {PowerConstraint::sum(10.0), PowerConstraint::per_antenna_uniform(4, 0.5)}) {
    auto lift = random_lift(4, 5, 23, power);
    Vec base = random_feasible_point(lift, 24);
    auto s = build_surrogate(lift, base);
    MirrorProxSolver solver;
    SolverConfig cfg;
    Vec w = solver.solve(s, lift, 0.2, base, cfg);
    CHECK(in_power_set(w, lift.power()));
  }
}

TEST_CASE("ergodic gap decay: gap at 2T at most 0.6x gap at T on average") {
  const int big_t = 200;
  double ratio_sum = 0.0;
  int count = 0;
  for (int i = 0; i < 20; ++i) {
    auto lift = random_lift(4, 5, 500 + i);
    Vec base = random_feasible_point(lift, 600 + i);
    auto s = build_surrogate(lift, base);
    const double g1 = mirror_prox_gap_at(s, lift, 0.1, base, big_t);
    const double g2 = mirror_prox_gap_at(s, lift, 0.1, base, 2 * big_t);
    REQUIRE(g1 > 0.0);
    ratio_sum += g2 / g1;
    ++count;
  }
  CHECK(ratio_sum / count <= 0.6);
}
