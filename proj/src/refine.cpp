#include "refine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include "cost.hpp"
#include "error.hpp"
#include "external.hpp"
#include "mip.hpp"
#include "numfmt.hpp"

namespace valveuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string where(const UnitParams& u, int t) {
  return "unit '" + u.id + "' period " + std::to_string(t + 1);
}

// Commitment state with pre-horizon periods resolved.
int state_at(const UnitParams& u, const Schedule& y, std::size_t ui, int t) {
  return t >= 0 ? y[ui][t] : pre_horizon_state(u, t + 1);
}

void check_shape(const Instance& inst, const Schedule& y, const Dispatch& p) {
  const std::size_t U = inst.units.size();
  if (y.size() != U || p.size() != U)
    throw DomainError("schedule does not match the number of units");
  for (std::size_t u = 0; u < U; ++u)
    if (static_cast<int>(y[u].size()) != inst.periods ||
        static_cast<int>(p[u].size()) != inst.periods)
      throw DomainError("schedule does not match the horizon");
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::OptimalWithinTolerance: return "optimal_within_tolerance";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

double true_cost(const Instance& inst, const Schedule& y, const Dispatch& p) {
  check_shape(inst, y, p);
  double total = 0.0;
  for (std::size_t ui = 0; ui < inst.units.size(); ++ui) {
    const UnitParams& u = inst.units[ui];
    for (int t = 0; t < inst.periods; ++t) {
      if (!y[ui][t]) continue;
      if (!state_at(u, y, ui, t - 1)) {
        bool cold = true;
        for (int i = t - u.t_cold - 1; i <= t - 1 && cold; ++i) cold = !state_at(u, y, ui, i);
        total += cold ? u.a_cold : u.a_hot;
      }
      total += fuel_cost(u, p[ui][t]);
    }
  }
  return total;
}

ValidationReport verify_solution(const Instance& inst, const Schedule& y, const Dispatch& p) {
  check_shape(inst, y, p);
  ValidationReport rep;
  auto add = [&](const std::string& code, const std::string& msg, double amount) {
    rep.errors.push_back({code, msg + " (" + format_real(amount) + ")"});
  };
  const int T = inst.periods;
  const std::size_t U = inst.units.size();
  for (int t = 0; t < T; ++t) {
    double gen = 0.0, cap = 0.0;
    for (std::size_t u = 0; u < U; ++u) {
      gen += p[u][t];
      if (y[u][t]) cap += inst.units[u].p_max;
    }
    const double D = inst.demand[t];
    if (std::abs(gen - D) > 1e-6 * std::max(1.0, D))
      add("load", "period " + std::to_string(t + 1) + " load balance", gen - D);
    const double need = D + inst.reserve[t];
    if (cap < need - 1e-6 * std::max(1.0, need))
      add("reserve", "period " + std::to_string(t + 1) + " spinning reserve", need - cap);
  }
  for (std::size_t ui = 0; ui < U; ++ui) {
    const UnitParams& u = inst.units[ui];
    const double tol = 1e-6 * std::max(1.0, u.p_max);
    for (int t = 0; t < T; ++t) {
      if (y[ui][t] != 0 && y[ui][t] != 1) add("state", where(u, t) + " state not 0/1", y[ui][t]);
      const double lo = y[ui][t] ? u.p_min : 0.0, hi = y[ui][t] ? u.p_max : 0.0;
      if (p[ui][t] < lo - tol) add("limits", where(u, t) + " below minimum output", lo - p[ui][t]);
      if (p[ui][t] > hi + tol) add("limits", where(u, t) + " above maximum output", p[ui][t] - hi);
    }
    const int pinned = std::min(pinned_prefix(u), T);
    for (int t = 0; t < pinned; ++t)
      if (y[ui][t] != u.y_prev)
        add(u.y_prev ? "initon" : "initoff", where(u, t) + " breaks the initial minimum time", 1);
    for (int t = 0; t < T; ++t) {
      const int prev = state_at(u, y, ui, t - 1);
      if (y[ui][t] && !prev) {
        for (int i = t; i < std::min(T, t + u.t_on); ++i)
          if (!y[ui][i]) {
            add("minup", where(u, i) + " off before minimum up time", i - t);
            break;
          }
      }
      if (!y[ui][t] && prev) {
        for (int i = t; i < std::min(T, t + u.t_off); ++i)
          if (y[ui][i]) {
            add("mindown", where(u, i) + " on before minimum down time", i - t);
            break;
          }
      }
    }
  }
  return rep;
}

SolveResult solve_ucp(const Instance& inst, const RefineConfig& cfg) {
  if (!(cfg.tolerance > 0)) throw DomainError("tolerance must be positive");
  if (cfg.k_initial < 1) throw DomainError("k_initial must be at least 1");
  if (!(cfg.time_limit > 0)) throw DomainError("time limit must be positive");
  if (cfg.backend == Backend::External && cfg.solver_cmd.empty())
    throw DomainError("external backend needs a solver command");
  const ValidationReport report = validate(inst);
  if (!report.ok()) {
    std::string msg = "invalid instance:";
    for (const auto& d : report.errors) msg += " [" + d.code + "] " + d.message + ";";
    throw InvalidInstance(msg);
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const int U = static_cast<int>(inst.units.size());
  const int T = inst.periods;

  BreakpointGrid grid(U);
  for (int u = 0; u < U; ++u) grid[u].assign(T, initial_breakpoints(inst.units[u]));

  SolveResult res;
  res.status = SolveStatus::TimeLimit;
  double lb = -kInf, ub = kInf;
  int K = cfg.k_initial;
  std::optional<UcpModel> prev_model;
  std::vector<double> prev_values;
  bool have_best = false;

  for (int iter = 1;; ++iter) {
    const double remaining = cfg.time_limit - elapsed();
    if (remaining <= 0) break;

    UcpModel ucp = build_model(inst, grid);
    std::optional<WarmStart> ws;
    if (prev_model) ws = encode_warm_start(ucp, prev_model->model, prev_values);

    const double err = have_best ? (ub - lb) / std::max(std::abs(ub), 1e-9) : kInf;
    MipLimits limits;
    limits.gap = err > cfg.coarse_gap * cfg.switch_factor ? cfg.coarse_gap : 0.0;
    limits.time_seconds = remaining;
    MipOutcome mip = cfg.backend == Backend::External
                         ? solve_external(ucp.model, cfg.solver_cmd, limits, ws ? &*ws : nullptr)
                         : solve_mip(ucp.model, limits, ws ? &*ws : nullptr);
    if (mip.status == MipStatus::Infeasible) throw InfeasibleError("instance is infeasible");
    if (!mip.has_incumbent) break;

    // Read the incumbent back as a schedule and clamp outputs onto limits.
    Schedule y(U, std::vector<int>(T, 0));
    Dispatch p(U, std::vector<double>(T, 0.0));
    for (int u = 0; u < U; ++u)
      for (int t = 0; t < T; ++t) {
        y[u][t] = mip.incumbent[ucp.index.y[u][t]] > 0.5 ? 1 : 0;
        if (y[u][t])
          p[u][t] = std::clamp(mip.incumbent[ucp.index.p[u][t]], inst.units[u].p_min,
                               inst.units[u].p_max);
      }
    const double cost = true_cost(inst, y, p);
    if (cost < ub) {
      ub = cost;
      res.schedule = y;
      res.dispatch = p;
      have_best = true;
    }
    lb = std::min(std::max(lb, mip.best_bound), ub);

    TraceRow row;
    row.iteration = iter;
    row.lb = lb;
    row.ub = cost;
    row.gap = (ub - lb) / std::max(std::abs(ub), 1e-9);
    row.k_current = K;
    for (const auto& per_unit : grid)
      for (const auto& b : per_unit) row.total_breakpoints += static_cast<long>(b.size());
    row.mip_nodes = mip.nodes;
    row.wall_ms = cfg.record_wall_time ? static_cast<long>(elapsed() * 1000.0) : 0;
    res.trace.push_back(row);
    res.iterations = iter;

    if (ub - lb < cfg.tolerance * std::abs(ub)) {
      res.status = SolveStatus::OptimalWithinTolerance;
      break;
    }
    if (mip.status == MipStatus::TimeLimit) break;

    // Refine the intervals that hold committed outputs.
    std::vector<std::pair<int, int>> coarse, committed;
    for (int u = 0; u < U; ++u)
      for (int t = 0; t < T; ++t) {
        if (!y[u][t]) continue;
        committed.emplace_back(u, t);
        if (coarse_in_solution(grid[u][t], p[u][t], K)) coarse.emplace_back(u, t);
      }
    if (coarse.empty()) {
      K *= 2;
      coarse = committed;
    }
    for (auto [u, t] : coarse) grid[u][t] = refine_breakpoints(grid[u][t], p[u][t], K);

    prev_values = std::move(mip.incumbent);
    prev_model = std::move(ucp);
  }

  if (!have_best) throw NoIncumbentError("time limit reached before a feasible schedule was found");
  res.lower_bound = lb;
  res.upper_bound = ub;
  res.relative_error = (ub - lb) / std::max(std::abs(ub), 1e-9);
  res.wall_seconds = cfg.record_wall_time ? elapsed() : 0.0;
  return res;
}

std::string trace_csv(const SolveResult& result) {
  std::string out = "iteration,lb,ub,gap,k_current,total_breakpoints,mip_nodes,wall_ms\n";
  for (const auto& r : result.trace)
    out += std::to_string(r.iteration) + "," + format_g17(r.lb) + "," + format_g17(r.ub) + "," +
           format_g17(r.gap) + "," + std::to_string(r.k_current) + "," +
           std::to_string(r.total_breakpoints) + "," + std::to_string(r.mip_nodes) + "," +
           std::to_string(r.wall_ms) + "\n";
  return out;
}

void emit_trace(const SolveResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << trace_csv(result);
  f.close();
  if (!f) throw IoError("cannot write '" + path + "'");
}

std::string solution_text(const Instance& inst, const SolveResult& result) {
  std::string out = "# u t y p\n";
  for (std::size_t u = 0; u < inst.units.size(); ++u)
    for (int t = 0; t < inst.periods; ++t)
      out += inst.units[u].id + " " + std::to_string(t + 1) + " " +
             std::to_string(result.schedule[u][t]) + " " + format_g17(result.dispatch[u][t]) + "\n";
  return out;
}

}  // namespace valveuc
