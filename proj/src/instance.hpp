#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace valveuc {

/// Cost and technical data of one thermal unit.
///
/// Fuel cost is a + b p + c p^2 + |e sin(f (p_min - p))| for p in
/// [p_min, p_max]. Times are counted in periods.
struct UnitParams {
  std::string id;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double e = 0.0;
  double f = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  int t_on = 1;
  int t_off = 1;
  double a_hot = 0.0;
  double a_cold = 0.0;
  int t_cold = 0;
  int y_prev = 1;
  int t_prev = 1;

  bool operator==(const UnitParams&) const = default;
};

struct Instance {
  std::vector<UnitParams> units;
  int periods = 0;
  std::vector<double> demand;
  std::vector<double> reserve;

  bool operator==(const Instance&) const = default;
};

struct Diagnostic {
  std::string code;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  bool ok() const { return errors.empty(); }
  bool has_error(std::string_view code) const;
  bool has_warning(std::string_view code) const;
};

/// Parses an instance document (header plus unit records).
/// Throws ParseError with the offending line and column.
Instance parse_instance(std::string_view text);

/// Parses a document made of unit records only (used for dispatch data).
std::vector<UnitParams> parse_units(std::string_view text);

/// Writes an instance document that parse_instance reads back exactly.
std::string format_instance(const Instance& inst);
std::string format_units(const std::vector<UnitParams>& units);

ValidationReport validate(const Instance& inst);

/// Single-period instance whose units are all forced on, so that solving it
/// is an economic load dispatch. Throws DomainError on empty units or a
/// nonpositive load.
Instance eld_to_ucp(const std::vector<UnitParams>& units, double load);

/// Truncates or cyclically repeats the demand/reserve profile to `periods`.
Instance with_periods(const Instance& inst, int periods);

/// Commitment state of a unit at a period index <= 0 (before the horizon).
/// Periods -t_prev+1..0 hold y_prev; anything earlier holds the opposite.
int pre_horizon_state(const UnitParams& u, int period);

/// First periods pinned by the initial minimum up/down time:
/// max(0, t_on - t_prev) if the unit starts on, max(0, t_off - t_prev) if off.
int pinned_prefix(const UnitParams& u);

}  // namespace valveuc
