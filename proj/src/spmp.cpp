#include "mcbf/spmp.hpp"

#include <cmath>

namespace mcbf {

namespace {

constexpr double kSimplexFloor = 1e-300;

/// Entropic mirror ascent step on the simplex: y <- normalize(y * exp(alpha g)),
/// computed in the log domain with max subtraction.
Vec entropy_step(const Vec& y, const Vec& g, double alpha) {
  Vec logy = y.array().max(kSimplexFloor).log() + alpha * g.array();
  const double c = logy.maxCoeff();
  // clamp at -700: below that exp underflows to subnormals and libm crawls
  Vec out = (logy.array() - c).max(-700.0).exp();
  return project_simplex_entropy(out);
}

/// min_{w in P} c^T w, closed form per group (or whole-vector for sum power).
double min_linear_over_power_set(const Vec& c, const PowerConstraint& power) {
  if (power.kind == PowerConstraint::Kind::SumPower)
    return -std::sqrt(power.total) * c.norm();
  const int n = static_cast<int>(c.size()) / 2;
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    acc -= std::sqrt(power.per[j]) * std::hypot(c[j], c[j + n]);
  return acc;
}

}  // namespace

SaddleGradients saddle_gradients(const SurrogateModel& surrogate, double lambda,
                                 const Vec& w, const Vec& y, const Vec& s) {
  SaddleGradients g;
  g.g_w = surrogate.Q.transpose() * y + lambda * s;
  g.g_y = surrogate.Q * w + surrogate.b;
  g.g_s = lambda * w;
  return g;
}

Vec project_simplex_entropy(const Vec& y_raw) {
  if ((y_raw.array() <= 0.0).any())
    throw SolverError("nonpositive entry reached the simplex projection");
  const double sum = y_raw.sum();
  return y_raw / sum;
}

Vec project_group_ball(const Vec& s_raw) {
  const int n = static_cast<int>(s_raw.size()) / 2;
  Vec s = s_raw;
  for (int j = 0; j < n; ++j) {
    const double nrm = std::hypot(s[j], s[j + n]);
    if (nrm > 1.0) {
      s[j] /= nrm;
      s[j + n] /= nrm;
    }
  }
  return s;
}

double spmp_lipschitz(const SurrogateModel& surrogate, double lambda) {
  double l = lambda;
  for (int m = 0; m < surrogate.Q.rows(); ++m)
    l = std::max(l, surrogate.Q.row(m).norm());
  return l;
}

double spmp_gap(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                double lambda, const Vec& w, const Vec& y, const Vec& s) {
  const double primal = surrogate.objective(w, lambda);
  const Vec c = surrogate.Q.transpose() * y + lambda * s;
  const double dual = y.dot(surrogate.b) + min_linear_over_power_set(c, lift.power());
  return primal - dual;
}

namespace {

struct MirrorProxRun {
  Vec w_erg, y_erg, s_erg;
  Vec w_last;
};

MirrorProxRun run_mirror_prox(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                              double lambda, const Vec& warm, const SolverConfig& config,
                              int max_iters, bool check_gap) {
  const int m = lift.users();
  const double big_l = spmp_lipschitz(surrogate, lambda);
  MirrorProxRun out;
  out.w_last = warm;
  out.w_erg = warm;
  out.y_erg = Vec::Constant(m, 1.0 / m);
  out.s_erg = Vec::Zero(lift.dim());
  if (big_l == 0.0) return out;  // degenerate: any feasible point is optimal

  const double alpha = 1.0 / (2.0 * big_l);
  Vec w = warm;
  Vec y = Vec::Constant(m, 1.0 / m);
  Vec s = Vec::Zero(lift.dim());
  Vec w_sum = Vec::Zero(lift.dim());
  Vec y_sum = Vec::Zero(m);
  Vec s_sum = Vec::Zero(lift.dim());
  int count = 0;

  for (int t = 0; t < max_iters; ++t) {
    // extrapolation step at z
    SaddleGradients g = saddle_gradients(surrogate, lambda, w, y, s);
    Vec rw = project_power_set(w - alpha * g.g_w, lift.power());
    Vec ry = entropy_step(y, g.g_y, alpha);
    Vec rs = project_group_ball(s + alpha * g.g_s);
    // correction step at r
    SaddleGradients gr = saddle_gradients(surrogate, lambda, rw, ry, rs);
    w = project_power_set(w - alpha * gr.g_w, lift.power());
    y = entropy_step(y, gr.g_y, alpha);
    s = project_group_ball(s + alpha * gr.g_s);

    w_sum += rw;
    y_sum += ry;
    s_sum += rs;
    ++count;

    if (!w.allFinite()) throw SolverError("mirror-prox iterate diverged (non-finite)");

    if (check_gap && (t + 1) % 25 == 0) {
      out.w_erg = w_sum / count;
      out.y_erg = project_simplex_entropy(y_sum / count);
      out.s_erg = s_sum / count;
      const double gap = spmp_gap(surrogate, lift, lambda, out.w_erg, out.y_erg, out.s_erg);
      const double primal = surrogate.objective(out.w_erg, lambda);
      if (gap <= config.inner_eps * (1.0 + std::abs(primal))) {
        out.w_last = w;
        return out;
      }
    }
  }
  out.w_erg = w_sum / count;
  out.y_erg = project_simplex_entropy(y_sum / count);
  out.s_erg = s_sum / count;
  out.w_last = w;
  return out;
}

}  // namespace

Vec MirrorProxSolver::solve(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                            double lambda, const Vec& warm, const SolverConfig& config) {
  MirrorProxRun run = run_mirror_prox(surrogate, lift, lambda, warm, config,
                                      config.max_inner_iters, /*check_gap=*/true);
  const Vec erg = project_power_set(run.w_erg, lift.power());
  // the ergodic average carries the guarantee, but the last iterate is often
  // sharper (sparser); keep whichever scores better on the true subproblem
  if (surrogate.objective(run.w_last, lambda) < surrogate.objective(erg, lambda))
    return run.w_last;
  return erg;
}

double mirror_prox_gap_at(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                          double lambda, const Vec& w0, int iters) {
  SolverConfig cfg;
  cfg.inner_eps = 0.0;  // never stop on the gap; run exactly `iters` iterations
  MirrorProxRun run = run_mirror_prox(surrogate, lift, lambda, w0, cfg, iters,
                                      /*check_gap=*/false);
  return spmp_gap(surrogate, lift, lambda, project_power_set(run.w_erg, lift.power()),
                  run.y_erg, run.s_erg);
}

}  // namespace mcbf
