#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcbf/channel.hpp"
#include "mcbf/io.hpp"
#include "mcbf/kernels.hpp"
#include "mcbf/oracle.hpp"
#include "mcbf/sca.hpp"
#include "mcbf/selection.hpp"

using nlohmann::json;

namespace {

struct PowerSpec {
  std::string raw = "sum:1";
  mcbf::PowerConstraint build(int n) const {
    const auto colon = raw.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--power", "expected sum:P or per:P");
    const std::string kind = raw.substr(0, colon);
    const double value = std::stod(raw.substr(colon + 1));
    if (kind == "sum") return mcbf::PowerConstraint::sum(value);
    if (kind == "per") return mcbf::PowerConstraint::per_antenna_uniform(n, value);
    throw CLI::ValidationError("--power", "expected sum:P or per:P");
  }
};

struct InstanceSource {
  std::string in_file;
  int n = 0;
  int m = 0;
  PowerSpec power;
  std::uint64_t seed = 0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--in", in_file, "instance JSON file (overrides generator flags)");
    cmd->add_option("--n", n, "antenna count for generated instances");
    cmd->add_option("--m", m, "user count for generated instances");
    cmd->add_option("--power", power.raw, "power constraint, sum:P or per:P")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "base RNG seed")->capture_default_str();
  }

  // trial t draws its channel realization from substream 2t and its solver
  // starting point from substream 2t+1 of the base seed
  mcbf::ProblemInstance instance_for_trial(int trial) const {
    if (!in_file.empty()) return mcbf::load_instance(in_file);
    if (n <= 0 || m <= 0)
      throw CLI::ValidationError("--n/--m", "required when no --in file is given");
    mcbf::ChannelModelParams params;
    params.N = n;
    params.M = m;
    params.rng_seed = mcbf::substream_seed(seed, 2 * static_cast<std::uint64_t>(trial));
    return mcbf::generate_instance(params, power.build(n));
  }

  std::uint64_t solver_seed_for_trial(int trial) const {
    return mcbf::substream_seed(seed, 2 * static_cast<std::uint64_t>(trial) + 1);
  }
};

struct ConfigFlags {
  mcbf::SolverConfig cfg;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--eps-outer", cfg.eps_outer)->capture_default_str();
    cmd->add_option("--inner-eps", cfg.inner_eps)->capture_default_str();
    cmd->add_option("--max-inner-iters", cfg.max_inner_iters)->capture_default_str();
    cmd->add_option("--max-sca-iters", cfg.max_sca_iters)->capture_default_str();
    cmd->add_option("--rho", cfg.admm_rho)->capture_default_str();
    cmd->add_option("--mu", cfg.smoothing_mu)->capture_default_str();
    cmd->add_option("--lambda-lb", cfg.lambda_lb)->capture_default_str();
    cmd->add_option("--lambda-ub", cfg.lambda_ub)->capture_default_str();
    cmd->add_option("--max-bisection-steps", cfg.max_bisection_steps)->capture_default_str();
    cmd->add_option("--refit-candidates", cfg.refit_candidates)->capture_default_str();
    cmd->add_option("--subset-cap", cfg.subset_cap)->capture_default_str();
    cmd->add_flag("--warm-bisection", cfg.warm_start_bisection,
                  "warm-start SCA across bisection steps");
  }
};

json config_echo(const mcbf::SolverConfig& cfg, const InstanceSource& src) {
  return json{{"eps_outer", cfg.eps_outer},
              {"inner_eps", cfg.inner_eps},
              {"max_inner_iters", cfg.max_inner_iters},
              {"max_sca_iters", cfg.max_sca_iters},
              {"admm_rho", cfg.admm_rho},
              {"smoothing_mu", cfg.smoothing_mu},
              {"sparsity_rel_threshold", cfg.sparsity_rel_threshold},
              {"lambda_lb", cfg.lambda_lb},
              {"lambda_ub", cfg.lambda_ub},
              {"max_bisection_steps", cfg.max_bisection_steps},
              {"refit_candidates", cfg.refit_candidates},
              {"warm_start_bisection", cfg.warm_start_bisection},
              {"subset_cap", cfg.subset_cap},
              {"base_seed", src.seed},
              {"in_file", src.in_file},
              {"n", src.n},
              {"m", src.m},
              {"power", src.power.raw}};
}

struct Task {
  int trial;
  int k;  // 0 = plain solve, no selection
  mcbf::SolverKind solver;
  bool exhaustive;
  double fixed_lambda;  // used when k == 0
};

struct TaskResult {
  mcbf::CsvRow row;
  json detail;
  bool failed = false;
  std::string error;
};

TaskResult run_task(const Task& task, const InstanceSource& src,
                    const mcbf::SolverConfig& base_cfg) {
  TaskResult out;
  mcbf::CsvRow& row = out.row;
  row.trial = task.trial;
  row.k = task.k;
  row.solver = (task.exhaustive ? "oracle-" : "") +
               std::string(task.solver == mcbf::SolverKind::Admm ? "admm" : "spmp");
  try {
    const mcbf::ProblemInstance inst = src.instance_for_trial(task.trial);
    row.n = inst.N;
    row.m = inst.M;
    const mcbf::RealLiftedInstance lift = mcbf::lift_to_real(inst);
    mcbf::SolverConfig cfg = base_cfg;
    cfg.rng_seed = src.solver_seed_for_trial(task.trial);

    const auto t0 = std::chrono::steady_clock::now();
    if (task.k == 0) {
      auto solver = mcbf::make_solver(task.solver);
      const mcbf::Vec w0 = mcbf::random_feasible_point(lift, cfg.rng_seed);
      mcbf::SolveReport rep = mcbf::sca_solve(lift, task.fixed_lambda, *solver, w0, cfg);
      row.lambda_final = task.fixed_lambda;
      row.t_repeat = 1;
      row.min_snr_db = rep.min_snr_db;
      row.sca_iters = rep.sca_iters;
      out.detail = json{{"min_snr_linear", rep.min_snr},
                        {"objective_trace", rep.objective_trace},
                        {"selected", rep.selected_antennas}};
    } else if (task.exhaustive) {
      mcbf::SelectionResult sel = mcbf::exhaustive_select(lift, task.k, task.solver, cfg);
      row.lambda_final = sel.lambda_final;
      row.t_repeat = sel.t_repeat;
      row.min_snr_db = 10.0 * std::log10(std::max(sel.min_snr, 1e-300));
      row.sca_iters = sel.total_sca_iters;
      out.detail = json{{"min_snr_linear", sel.min_snr}, {"selected", sel.selected}};
    } else {
      mcbf::SelectionResult sel = mcbf::select_antennas(lift, task.k, task.solver, cfg);
      row.lambda_final = sel.lambda_final;
      row.t_repeat = sel.t_repeat;
      row.min_snr_db = 10.0 * std::log10(std::max(sel.min_snr, 1e-300));
      row.sca_iters = sel.total_sca_iters;
      out.detail = json{{"min_snr_linear", sel.min_snr},
                        {"selected", sel.selected},
                        {"exact_hit", sel.exact_hit}};
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  } catch (const std::exception& e) {
    row.converged = false;
    out.failed = true;
    out.error = e.what();
    out.detail = json{{"error", e.what()}};
  }
  return out;
}

int run_batch(const std::vector<Task>& tasks, const InstanceSource& src,
              const mcbf::SolverConfig& cfg, const std::string& out_csv,
              const std::string& out_json, bool single_solve_mode) {
  std::vector<TaskResult> results(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i)
    results[i] = run_task(tasks[i], src, cfg);

  std::vector<mcbf::CsvRow> rows;
  json details = json::array();
  int failures = 0;
  for (const auto& r : results) {
    rows.push_back(r.row);
    json d = r.detail;
    d["trial"] = r.row.trial;
    d["k"] = r.row.k;
    d["solver"] = r.row.solver;
    d["lambda_final"] = r.row.lambda_final;
    d["t_repeat"] = r.row.t_repeat;
    details.push_back(std::move(d));
    if (r.failed) {
      ++failures;
      std::cerr << "trial " << r.row.trial << " (" << r.row.solver
                << ", K=" << r.row.k << ") failed: " << r.error << "\n";
    }
  }

  if (!out_csv.empty()) {
    mcbf::write_csv_file(rows, out_csv);
  } else {
    mcbf::write_csv(rows, std::cout);
  }
  if (!out_json.empty()) {
    json sidecar{{"config", config_echo(cfg, src)}, {"results", std::move(details)}};
    std::ofstream os(out_json);
    os << sidecar.dump(2) << "\n";
  }
  return (single_solve_mode && failures > 0) ? 1 : 0;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ks.push_back(std::stoi(item));
  }
  if (ks.empty()) throw CLI::ValidationError("--k-list", "empty K list");
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  mcbf::apply_worker_env();
  CLI::App app{"max-min fair multicast beamforming with antenna selection"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a channel instance file");
  int gen_n = 0, gen_m = 0;
  std::uint64_t gen_seed = 0;
  PowerSpec gen_power;
  std::string gen_out;
  gen->add_option("--n", gen_n, "antenna count")->required();
  gen->add_option("--m", gen_m, "user count")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--power", gen_power.raw, "sum:P or per:P")->capture_default_str();
  gen->add_option("--out", gen_out, "output JSON path")->required();

  // shared batch flags
  auto add_batch = [&](CLI::App* cmd, InstanceSource& src, ConfigFlags& flags,
                       std::string& solver, std::string& out_csv, std::string& out_json,
                       int& trials) {
    src.add_flags(cmd);
    flags.add_flags(cmd);
    cmd->add_option("--solver", solver, "admm | spmp | both")->capture_default_str();
    cmd->add_option("--trials", trials, "Monte-Carlo trials")->capture_default_str();
    cmd->add_option("--out-csv", out_csv, "CSV output path (stdout if omitted)");
    cmd->add_option("--out-json", out_json, "JSON sidecar path");
  };

  auto* solve = app.add_subcommand("solve", "single solve (optionally with selection)");
  InstanceSource solve_src;
  ConfigFlags solve_cfg;
  std::string solve_solver = "spmp", solve_csv, solve_json;
  int solve_trials = 1, solve_k = 0;
  double solve_lambda = 0.0;
  add_batch(solve, solve_src, solve_cfg, solve_solver, solve_csv, solve_json, solve_trials);
  solve->add_option("--k", solve_k, "target antenna count (0 = no selection)");
  solve->add_option("--lambda", solve_lambda, "fixed sparsity weight when --k is 0")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "selection pipeline over a K list");
  InstanceSource sweep_src;
  ConfigFlags sweep_cfg;
  std::string sweep_solver = "spmp", sweep_csv, sweep_json, sweep_klist;
  int sweep_trials = 1;
  add_batch(sweep, sweep_src, sweep_cfg, sweep_solver, sweep_csv, sweep_json, sweep_trials);
  sweep->add_option("--k-list", sweep_klist, "comma-separated K values")->required();

  auto* oracle = app.add_subcommand("oracle", "exhaustive subset benchmark");
  InstanceSource oracle_src;
  ConfigFlags oracle_cfg;
  std::string oracle_solver = "spmp", oracle_csv, oracle_json, oracle_klist;
  int oracle_trials = 1;
  add_batch(oracle, oracle_src, oracle_cfg, oracle_solver, oracle_csv, oracle_json,
            oracle_trials);
  oracle->add_option("--k-list", oracle_klist, "comma-separated K values")->required();

  auto* bench = app.add_subcommand("bench", "Monte-Carlo benchmark over K and solvers");
  InstanceSource bench_src;
  ConfigFlags bench_cfg;
  std::string bench_solver = "both", bench_csv, bench_json, bench_klist;
  int bench_trials = 1;
  add_batch(bench, bench_src, bench_cfg, bench_solver, bench_csv, bench_json, bench_trials);
  bench->add_option("--k-list", bench_klist, "comma-separated K values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  auto solvers_from = [](const std::string& name) {
    std::vector<mcbf::SolverKind> out;
    if (name == "both") {
      out = {mcbf::SolverKind::Admm, mcbf::SolverKind::Spmp};
    } else {
      out = {mcbf::parse_solver_kind(name)};
    }
    return out;
  };

  try {
    if (*gen) {
      mcbf::ChannelModelParams params;
      params.N = gen_n;
      params.M = gen_m;
      params.rng_seed = gen_seed;
      mcbf::save_instance(mcbf::generate_instance(params, gen_power.build(gen_n)), gen_out);
      return 0;
    }

    std::vector<Task> tasks;
    if (*solve) {
      for (auto kind : solvers_from(solve_solver))
        for (int t = 0; t < solve_trials; ++t)
          tasks.push_back({t, solve_k, kind, false, solve_lambda});
      return run_batch(tasks, solve_src, solve_cfg.cfg, solve_csv, solve_json, true);
    }
    if (*sweep) {
      for (auto kind : solvers_from(sweep_solver))
        for (int k : parse_k_list(sweep_klist))
          for (int t = 0; t < sweep_trials; ++t)
            tasks.push_back({t, k, kind, false, 0.0});
      return run_batch(tasks, sweep_src, sweep_cfg.cfg, sweep_csv, sweep_json, false);
    }
    if (*oracle) {
      for (auto kind : solvers_from(oracle_solver))
        for (int k : parse_k_list(oracle_klist))
          for (int t = 0; t < oracle_trials; ++t)
            tasks.push_back({t, k, kind, true, 0.0});
      return run_batch(tasks, oracle_src, oracle_cfg.cfg, oracle_csv, oracle_json, false);
    }
    if (*bench) {
      for (auto kind : solvers_from(bench_solver))
        for (int k : parse_k_list(bench_klist))
          for (int t = 0; t < bench_trials; ++t)
            tasks.push_back({t, k, kind, false, 0.0});
      return run_batch(tasks, bench_src, bench_cfg.cfg, bench_csv, bench_json, false);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
