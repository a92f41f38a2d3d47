#pragma once

#include <limits>
#include <vector>

#include "lp.hpp"
#include "milp.hpp"

namespace valveuc {

struct MipLimits {
  double gap = 0.0;  // relative; 0 still stops within a 1e-9 relative floor
  double time_seconds = std::numeric_limits<double>::infinity();
};

enum class MipStatus { Optimal, GapLimit, TimeLimit, Infeasible };

const char* to_string(MipStatus s);

struct MipOutcome {
  MipStatus status = MipStatus::Infeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;
  double objective = std::numeric_limits<double>::infinity();
  double best_bound = -std::numeric_limits<double>::infinity();
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
};

/// Relative gap (incumbent - bound) / max(1e-9, |incumbent|).
double relative_gap(double incumbent, double bound);

/// Best-bound branch-and-bound over the binaries of `model`. Adjacency groups
/// are branched on as special ordered sets once every other binary is integral.
/// A feasible `start` becomes the first incumbent.
MipOutcome solve_mip(const MilpModel& model, const MipLimits& limits,
                     const WarmStart* start = nullptr);

}  // namespace valveuc
