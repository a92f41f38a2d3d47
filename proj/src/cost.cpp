#include "cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "numfmt.hpp"

namespace valveuc {

namespace {

constexpr double kConcavitySlack = 1e-12;

double cost_unchecked(const UnitParams& u, double p) {
  return u.a + u.b * p + u.c * p * p + std::abs(u.e * std::sin(u.f * (u.p_min - p)));
}

bool same_x(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

}  // namespace

double fuel_cost(const UnitParams& u, double p) {
  if (!(p >= u.p_min && p <= u.p_max))
    throw DomainError("output " + format_real(p) + " outside [" +
                      format_real(u.p_min) + ", " + format_real(u.p_max) +
                      "] for unit '" + u.id + "'");
  return cost_unchecked(u, p);
}

bool concavity_holds(const UnitParams& u) {
  return u.c <= u.e * u.f * u.f / 2 + kConcavitySlack;
}

std::vector<double> valve_points(const UnitParams& u) {
  std::vector<double> v{u.p_min};
  if (u.e > 0 && u.f > 0) {
    const double period = std::numbers::pi / u.f;
    for (long k = 1;; ++k) {
      double x = u.p_min + static_cast<double>(k) * period;
      if (x >= u.p_max || same_x(x, u.p_max)) break;
      v.push_back(x);
    }
  }
  if (u.p_max > u.p_min) v.push_back(u.p_max);
  return v;
}

std::size_t BreakpointSet::interval_of(double p) const {
  const std::size_t n = interval_count();
  if (n == 0) return 0;
  // Snap onto a valve point within rounding noise before applying the tie rule.
  auto it = std::upper_bound(valves_.begin(), valves_.end(), p);
  std::size_t j = it == valves_.begin() ? 0 : static_cast<std::size_t>(it - valves_.begin()) - 1;
  if (j + 1 < valves_.size() && same_x(p, valves_[j + 1])) ++j;
  return std::min(j, n - 1);
}

BreakpointSet initial_breakpoints(const UnitParams& u) {
  if (!concavity_holds(u))
    throw InvalidInstance("unit '" + u.id +
                          "' violates c <= e*f^2/2; no valid lower envelope");
  if (u.p_min > u.p_max)
    throw InvalidInstance("unit '" + u.id + "' has pmin > pmax");
  BreakpointSet b;
  b.unit_ = u;
  b.valves_ = valve_points(u);
  for (double x : b.valves_) b.points_.push_back({x, cost_unchecked(u, x), true});
  b.segments_.assign(b.valves_.size() > 1 ? b.valves_.size() - 1 : 1, 0);
  if (b.valves_.size() == 1) b.valves_.push_back(b.valves_.front());
  return b;
}

BreakpointSet refine_breakpoints(const BreakpointSet& bps, double p_star,
                                 int k) {
  if (k < 1) throw DomainError("segment count must be at least 1");
  const UnitParams& u = bps.unit_;
  if (!(p_star >= u.p_min && p_star <= u.p_max))
    throw DomainError("refinement point outside the unit's range");
  BreakpointSet out = bps;
  const std::size_t j = bps.interval_of(p_star);
  const double lo = bps.valves_[j];
  const double hi = bps.valves_[j + 1];
  if (hi <= lo) return out;

  std::vector<Breakpoint> added;
  for (int i = 1; i < k; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k);
    auto it = std::lower_bound(
        out.points_.begin(), out.points_.end(), x,
        [](const Breakpoint& b, double v) { return b.x < v; });
    bool dup = (it != out.points_.end() && same_x(it->x, x)) ||
               (it != out.points_.begin() && same_x(std::prev(it)->x, x));
    if (!dup) added.push_back({x, cost_unchecked(u, x), false});
  }
  if (!added.empty()) {
    out.points_.insert(out.points_.end(), added.begin(), added.end());
    std::sort(out.points_.begin(), out.points_.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
  }
  out.segments_[j] = std::max(out.segments_[j], k);
  return out;
}

double envelope_value(const BreakpointSet& bps, double p) {
  const auto& pts = bps.points();
  if (pts.empty() || !(p >= pts.front().x && p <= pts.back().x))
    throw DomainError("output " + format_real(p) +
                      " outside the breakpoint range of unit '" +
                      bps.unit_id() + "'");
  auto it = std::lower_bound(pts.begin(), pts.end(), p,
                             [](const Breakpoint& b, double v) { return b.x < v; });
  if (it->x == p) return it->y;
  const Breakpoint& right = *it;
  const Breakpoint& left = *std::prev(it);
  const double w = (p - left.x) / (right.x - left.x);
  return left.y + w * (right.y - left.y);
}

bool coarse_in_solution(const BreakpointSet& bps, double p_star, int k) {
  return bps.segments_in_interval(bps.interval_of(p_star)) < k;
}

std::string breakpoints_csv(const BreakpointSet& bps) {
  std::string out = "x,y,is_valve\n";
  for (const auto& b : bps.points())
    out += format_g17(b.x) + "," + format_g17(b.y) + "," +
           (b.is_valve ? "1" : "0") + "\n";
  return out;
}

}  // namespace valveuc
