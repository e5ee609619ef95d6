#include "mcbf/surrogate.hpp"

#include "mcbf/admm.hpp"
#include "mcbf/spmp.hpp"

namespace mcbf {

SurrogateModel build_surrogate(const RealLiftedInstance& lift, const Vec& w_t) {
  // Abar_m w = -(u_m (u_m . w) + v_m (v_m . w)), so
  // q_m = -2 (alpha_m u_m + beta_m v_m) and b_m = alpha_m^2 + beta_m^2.
  const Vec alpha = lift.u() * w_t;
  const Vec beta = lift.v() * w_t;
  SurrogateModel s;
  s.Q = -2.0 * (alpha.asDiagonal() * lift.u() + beta.asDiagonal() * lift.v());
  s.b = alpha.cwiseProduct(alpha) + beta.cwiseProduct(beta);
  s.base = w_t;
  return s;
}

std::unique_ptr<SubproblemSolver> make_solver(SolverKind kind) {
  if (kind == SolverKind::Admm) return std::make_unique<AdmmSolver>();
  return std::make_unique<MirrorProxSolver>();
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "admm") return SolverKind::Admm;
  if (name == "spmp") return SolverKind::Spmp;
  throw InvalidInstance("unknown solver: " + name);
}

}  // namespace mcbf
