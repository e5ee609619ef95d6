#include "mcbf/admm.hpp"

#include <cmath>
#include <deque>
#include <random>

namespace mcbf {

Vec prox_group_l12(const Vec& x, double threshold) {
  if (threshold < 0.0) throw InvalidInstance("threshold must be nonnegative");
  const int n = static_cast<int>(x.size()) / 2;
  Vec y = x;
  for (int j = 0; j < n; ++j) {
    const double nrm = std::hypot(x[j], x[j + n]);
    if (nrm <= threshold) {
      y[j] = 0.0;
      y[j + n] = 0.0;
    } else {
      const double s = 1.0 - threshold / nrm;
      y[j] *= s;
      y[j + n] *= s;
    }
  }
  return y;
}

SmoothedPwl smoothed_pwl(const SurrogateModel& surrogate, const Vec& w, double mu) {
  if (mu <= 0.0) throw InvalidInstance("mu must be positive");
  const Vec z = (surrogate.Q * w + surrogate.b) / mu;
  const double zmax = z.maxCoeff();
  // clamp the shifted exponents: beyond -40 the terms are ~4e-18 and libm's
  // exp takes a slow path on extreme arguments
  Vec theta = (z.array() - zmax).max(-40.0).exp();
  const double sum = theta.sum();
  theta /= sum;
  SmoothedPwl out;
  const double m = static_cast<double>(z.size());
  out.value = mu * (zmax + std::log(sum)) - mu * std::log(m);
  out.gradient = surrogate.Q.transpose() * theta;
  return out;
}

double spectral_norm(const Mat& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(q.cols());
  for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
  if (x.norm() == 0.0) x.setOnes();
  x.normalize();
  double prev = 0.0;
  for (int k = 0; k < 50; ++k) {
    Vec y = q.transpose() * (q * x);
    const double lam = y.norm();
    if (lam == 0.0) return 0.0;
    x = y / lam;
    if (k > 0 && std::abs(lam - prev) <= 1e-8 * lam) {
      prev = lam;
      break;
    }
    prev = lam;
  }
  return std::sqrt(prev);
}

Vec prox_g1_accel(const SurrogateModel& surrogate, const Vec& x, double rho, double mu,
                  double eps_mu, const Vec& w_init, int max_iters, double norm_q,
                  bool* converged) {
  const double tau = 1.0 / rho;
  const double big_l = tau + norm_q * norm_q / mu;
  // eps_mu is a function-value gap; tau-strong convexity turns it into an
  // attainable gradient-norm threshold
  const double grad_tol = std::sqrt(2.0 * tau * eps_mu);
  const auto total = [&](const Vec& w) {
    return smoothed_pwl(surrogate, w, mu).value + (w - x).squaredNorm() / (2.0 * rho);
  };
  // accelerated gradient with backtracking: the analytic big_l is a valid but
  // often wildly pessimistic curvature bound, so estimate locally instead
  double l_est = std::min(big_l, 10.0 * tau);
  Vec w = w_init;
  Vec y = w_init;
  double fw = total(w);
  if (converged) *converged = false;
  for (int k = 0; k < max_iters; ++k) {
    SmoothedPwl f = smoothed_pwl(surrogate, y, mu);
    Vec grad = f.gradient + (y - x) / rho;
    if (grad.norm() <= grad_tol) {
      if (converged) *converged = true;
      return y;
    }
    const double fy = f.value + (y - x).squaredNorm() / (2.0 * rho);
    const double g2 = grad.squaredNorm();
    Vec w_next;
    double f_next;
    for (;;) {
      w_next = y - grad / l_est;
      f_next = total(w_next);
      if (f_next <= fy - 0.5 * g2 / l_est || l_est >= big_l) break;
      l_est = std::min(2.0 * l_est, big_l);
    }
    const double ratio = std::sqrt(tau / std::max(l_est, tau));
    const double beta = (1.0 - ratio) / (1.0 + ratio);
    // restart momentum when it stops paying off
    y = (f_next <= fw) ? w_next + beta * (w_next - w) : w_next;
    w = std::move(w_next);
    fw = f_next;
    l_est = std::max(l_est * 0.5, tau);
  }
  return w;
}

Vec AdmmSolver::solve(const SurrogateModel& surrogate, const RealLiftedInstance& lift,
                      double lambda, const Vec& warm, const SolverConfig& config) {
  const int dim = lift.dim();
  if (!initialized_ || w1_.size() != dim) {
    w1_ = w2_ = w3_ = warm;
    v1_ = v2_ = v3_ = Vec::Zero(dim);
    initialized_ = true;
  }
  const double rho = config.admm_rho;
  const double mu = config.smoothing_mu;
  const double m = static_cast<double>(lift.users());
  // eps-optimality of the non-smooth prox needs eps_mu = eps - mu log M (Nesterov);
  // when that is nonpositive fall back to eps/10.
  const double budget = config.inner_eps - mu * std::log(m);
  const double eps_mu = budget > 0.0 ? budget : config.inner_eps / 10.0;
  const double norm_q = spectral_norm(surrogate.Q);

  Vec w_av = (w1_ + w2_ + w3_) / 3.0;
  double prev_obj = surrogate.objective(project_power_set(w_av, lift.power()), lambda);
  std::deque<double> residual_window;
  for (int k = 0; k < config.max_inner_iters; ++k) {
    w1_ = prox_g1_accel(surrogate, w_av - v1_, rho, mu, eps_mu, w_av,
                        config.accel_max_iters, norm_q);
    w2_ = prox_group_l12(w_av - v2_, lambda * rho);
    w3_ = project_power_set(w_av - v3_, lift.power());
    w_av = (w1_ + w2_ + w3_) / 3.0;
    v1_ += w1_ - w_av;
    v2_ += w2_ - w_av;
    v3_ += w3_ - w_av;

    const double r = (w1_ - w_av).norm() + (w2_ - w_av).norm() + (w3_ - w_av).norm();
    if (!std::isfinite(r))
      throw SolverError("ADMM consensus residual is not finite (rho=" + std::to_string(rho) +
                        ", lambda=" + std::to_string(lambda) + ", iter=" + std::to_string(k) +
                        ")");
    residual_window.push_back(r);
    if (residual_window.size() > 100) {
      // sustained growth only: compare the best residual of the recent half
      // against the best of the older half, so spikes and bounded oscillation
      // from the inexact prox do not count as divergence; real divergence
      // drives the residual past the scale of the iterate itself
      double old_min = residual_window[0], new_min = residual_window[50];
      for (int i = 0; i < 50; ++i) {
        old_min = std::min(old_min, residual_window[i]);
        new_min = std::min(new_min, residual_window[50 + i]);
      }
      if (new_min > 10.0 * old_min && r > 0.1 * (1.0 + w_av.norm()))
        throw SolverError("ADMM consensus residual grew 10x over 100 iterations (rho=" +
                          std::to_string(rho) + ", lambda=" + std::to_string(lambda) +
                          ", iter=" + std::to_string(k) + ", r=" + std::to_string(r) + ")");
      residual_window.pop_front();
    }

    if (r <= config.inner_eps * (1.0 + w_av.norm())) {
      const double obj = surrogate.objective(project_power_set(w_av, lift.power()), lambda);
      if (std::abs(prev_obj - obj) <= config.inner_eps * std::max(1.0, std::abs(obj)))
        break;
      prev_obj = obj;
    }
  }
  return project_power_set(w_av, lift.power());
}

}  // namespace mcbf
