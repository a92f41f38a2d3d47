#pragma once

#include <string>
#include <vector>

#include "instance.hpp"

namespace valveuc {

/// Exact fuel cost of unit `u` at output `p`, valve-point term included.
/// Throws DomainError when p is outside [p_min, p_max].
double fuel_cost(const UnitParams& u, double p);

/// Whether c <= e f^2 / 2 (absolute slack 1e-12), the condition under which
/// the cost is treated as concave between consecutive valve points.
bool concavity_holds(const UnitParams& u);

/// p_min + k pi/f for k = 0, 1, ... up to p_max, followed by p_max.
/// Just {p_min, p_max} when the unit has no valve term.
std::vector<double> valve_points(const UnitParams& u);

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;
  bool is_valve = false;  // valve point or domain endpoint
};

/// Interpolation points of the piecewise-linear lower envelope of one unit's
/// cost in one period. Points are kept sorted by x and are never removed.
class BreakpointSet {
 public:
  BreakpointSet() = default;

  const std::string& unit_id() const { return unit_.id; }
  const UnitParams& unit() const { return unit_; }
  const std::vector<Breakpoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// Valve points delimiting the inter-valve intervals (including both ends).
  const std::vector<double>& valves() const { return valves_; }
  std::size_t interval_count() const { return valves_.size() - 1; }

  /// Number of equal segments the interval has been divided into (0 = never).
  int segments_in_interval(std::size_t interval) const {
    return segments_[interval];
  }

  /// Inter-valve interval holding p. A p on a valve point belongs to the
  /// interval on its right, except p_max which belongs to the last one.
  std::size_t interval_of(double p) const;

  friend BreakpointSet initial_breakpoints(const UnitParams& u);
  friend BreakpointSet refine_breakpoints(const BreakpointSet& bps,
                                          double p_star, int k);

 private:
  UnitParams unit_;
  std::vector<Breakpoint> points_;
  std::vector<double> valves_;
  std::vector<int> segments_;
};

/// Breakpoints at the valve points only. Throws InvalidInstance when the
/// concavity condition fails.
BreakpointSet initial_breakpoints(const UnitParams& u);

/// Splits the inter-valve interval containing p_star into k equal segments,
/// keeping every existing point.
BreakpointSet refine_breakpoints(const BreakpointSet& bps, double p_star,
                                 int k);

/// Linear interpolation of the breakpoints at p. Throws DomainError outside
/// the breakpoint range.
double envelope_value(const BreakpointSet& bps, double p);

/// True when the interval containing p_star has fewer than k segments.
bool coarse_in_solution(const BreakpointSet& bps, double p_star, int k);

/// CSV dump "x,y,is_valve" with a header line.
std::string breakpoints_csv(const BreakpointSet& bps);

}  // namespace valveuc
