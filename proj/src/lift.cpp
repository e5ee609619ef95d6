#include "mcbf/lift.hpp"

#include <cmath>
#include <random>

namespace mcbf {

void ProblemInstance::validate() const {
  if (N <= 0 || M <= 0) throw InvalidInstance("N and M must be positive");
  if (static_cast<int>(channels.size()) != M)
    throw InvalidInstance("channels size must equal M");
  if (noise_vars.size() != M) throw InvalidInstance("noise_vars size must equal M");
  if ((noise_vars.array() <= 0.0).any())
    throw InvalidInstance("noise variances must be positive");
  for (const auto& h : channels) {
    if (h.size() != N) throw InvalidInstance("channel length must equal N");
    if (!h.allFinite()) throw InvalidInstance("channel has non-finite entries");
    if (h.norm() == 0.0) throw InvalidInstance("zero channel vector");
  }
  if (power.kind == PowerConstraint::Kind::PerAntenna && power.per.size() != N)
    throw InvalidInstance("per-antenna budget length must equal N");
}

int BeamVector::cardinality(double rel_threshold) const {
  return static_cast<int>(support(rel_threshold).size());
}

std::vector<int> BeamVector::support(double rel_threshold) const {
  const Vec g = group_norms();
  const double gmax = g.maxCoeff();
  std::vector<int> idx;
  if (gmax == 0.0) return idx;
  for (int j = 0; j < g.size(); ++j)
    if (g[j] > rel_threshold * gmax) idx.push_back(j);
  return idx;
}

RealLiftedInstance::RealLiftedInstance(Mat u, Mat v, PowerConstraint power)
    : u_(std::move(u)), v_(std::move(v)), power_(std::move(power)) {}

Vec RealLiftedInstance::quad_values(const Vec& w) const {
  const Vec a = u_ * w;
  const Vec b = v_ * w;
  return a.cwiseProduct(a) + b.cwiseProduct(b);
}

RealLiftedInstance RealLiftedInstance::restrict_to(const std::vector<int>& selected) const {
  const int n = antennas();
  const int k = static_cast<int>(selected.size());
  if (k == 0) throw InvalidInstance("empty antenna subset");
  Mat ur(users(), 2 * k), vr(users(), 2 * k);
  for (int c = 0; c < k; ++c) {
    const int j = selected[c];
    if (j < 0 || j >= n) throw InvalidInstance("antenna index out of range");
    ur.col(c) = u_.col(j);
    ur.col(c + k) = u_.col(j + n);
    vr.col(c) = v_.col(j);
    vr.col(c + k) = v_.col(j + n);
  }
  PowerConstraint p = power_;
  if (p.kind == PowerConstraint::Kind::PerAntenna) {
    Vec per(k);
    for (int c = 0; c < k; ++c) per[c] = power_.per[selected[c]];
    p.per = per;
  }
  return RealLiftedInstance(std::move(ur), std::move(vr), std::move(p));
}

Vec RealLiftedInstance::embed(const Vec& restricted, const std::vector<int>& selected) const {
  const int n = antennas();
  const int k = static_cast<int>(selected.size());
  Vec full = Vec::Zero(2 * n);
  for (int c = 0; c < k; ++c) {
    full[selected[c]] = restricted[c];
    full[selected[c] + n] = restricted[c + k];
  }
  return full;
}

RealLiftedInstance lift_to_real(const ProblemInstance& inst) {
  inst.validate();
  Mat u(inst.M, 2 * inst.N), v(inst.M, 2 * inst.N);
  for (int m = 0; m < inst.M; ++m) {
    const double s = std::sqrt(inst.noise_vars[m]);
    const CVec& h = inst.channels[m];
    for (int j = 0; j < inst.N; ++j) {
      u(m, j) = h[j].real() / s;
      u(m, j + inst.N) = h[j].imag() / s;
      v(m, j) = -h[j].imag() / s;
      v(m, j + inst.N) = h[j].real() / s;
    }
  }
  return RealLiftedInstance(std::move(u), std::move(v), inst.power);
}

double group_l12_norm(const Vec& w) {
  const int n = static_cast<int>(w.size()) / 2;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += std::hypot(w[j], w[j + n]);
  return acc;
}

double eval_min_snr(const RealLiftedInstance& lift, const Vec& w) {
  if (w.size() != lift.dim()) throw InvalidInstance("beam dimension mismatch");
  return lift.quad_values(w).minCoeff();
}

double eval_objective(const RealLiftedInstance& lift, const Vec& w, double lambda) {
  if (lambda < 0.0) throw InvalidInstance("lambda must be nonnegative");
  return -eval_min_snr(lift, w) + lambda * group_l12_norm(w);
}

Vec project_power_set(const Vec& w_raw, const PowerConstraint& power) {
  if (power.kind == PowerConstraint::Kind::SumPower) {
    const double r = std::sqrt(power.total);
    const double nrm = w_raw.norm();
    if (nrm <= r) return w_raw;
    return w_raw * (r / nrm);
  }
  const int n = static_cast<int>(w_raw.size()) / 2;
  Vec w = w_raw;
  for (int j = 0; j < n; ++j) {
    const double r = std::sqrt(power.per[j]);
    const double nrm = std::hypot(w[j], w[j + n]);
    if (nrm > r) {
      const double s = r / nrm;
      w[j] *= s;
      w[j + n] *= s;
    }
  }
  return w;
}

bool in_power_set(const Vec& w, const PowerConstraint& power, double tol) {
  return (w - project_power_set(w, power)).norm() <= tol * (1.0 + w.norm());
}

Vec random_feasible_point(const RealLiftedInstance& lift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec w(lift.dim());
  for (int i = 0; i < w.size(); ++i) w[i] = gauss(rng);
  return project_power_set(w, lift.power());
}

}  // namespace mcbf
