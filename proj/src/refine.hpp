#pragma once

#include <limits>
#include <string>
#include <vector>

#include "instance.hpp"
#include "milp.hpp"

namespace valveuc {

enum class Backend { Embedded, External };

struct RefineConfig {
  double tolerance = 1e-7;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  int k_initial = 2;
  Backend backend = Backend::Embedded;
  std::string solver_cmd;
  // Inner MIP gap used while the outer relative error exceeds
  // coarse_gap * switch_factor; afterwards the MIP is solved to optimality.
  double coarse_gap = 1e-4;
  double switch_factor = 10.0;
  bool record_wall_time = true;  // false writes 0 in wall_ms
};

enum class SolveStatus { OptimalWithinTolerance, TimeLimit };

const char* to_string(SolveStatus s);

struct TraceRow {
  int iteration = 0;
  double lb = 0.0;
  double ub = 0.0;   // true cost of this iteration's incumbent
  double gap = 0.0;  // (best ub - lb) / best ub
  int k_current = 0;
  long total_breakpoints = 0;
  long mip_nodes = 0;
  long wall_ms = 0;
};

using Schedule = std::vector<std::vector<int>>;     // [unit][period]
using Dispatch = std::vector<std::vector<double>>;  // [unit][period]

struct SolveResult {
  SolveStatus status = SolveStatus::TimeLimit;
  Schedule schedule;
  Dispatch dispatch;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double relative_error = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;  // 0 when wall time is not recorded
  std::vector<TraceRow> trace;
};

/// Adaptive piecewise-linear lower bounding: solve, evaluate, refine the
/// intervals holding committed outputs, repeat until the bounds meet.
/// Throws InvalidInstance, InfeasibleError, NoIncumbentError.
SolveResult solve_ucp(const Instance& inst, const RefineConfig& cfg);

/// Start-up costs implied by the schedule plus fuel cost of committed units.
/// Throws DomainError when a committed output lies outside its limits.
double true_cost(const Instance& inst, const Schedule& y, const Dispatch& p);

/// Load, reserve, limits and minimum up/down checks by substitution.
ValidationReport verify_solution(const Instance& inst, const Schedule& y,
                                 const Dispatch& p);

std::string trace_csv(const SolveResult& result);
void emit_trace(const SolveResult& result, const std::string& path);

/// `u t y p` rows, one per unit and period.
std::string solution_text(const Instance& inst, const SolveResult& result);

}  // namespace valveuc
