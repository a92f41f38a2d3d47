#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cost.hpp"
#include "instance.hpp"

namespace valveuc {

enum class VarKind { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// Convex-combination weights of one (unit, period) together with the
/// segment indicators that keep at most two consecutive weights positive.
/// indicators[j] selects the segment between weights[j] and weights[j+1];
/// positions[k] is the abscissa carried by weights[k].
struct AdjacencyGroup {
  int unit = 0;
  int period = 0;
  std::vector<int> weights;
  std::vector<int> indicators;
  std::vector<double> positions;
};

/// A constraint violated by an assignment, as found by substitution.
struct Violation {
  std::string what;  // constraint or variable name
  double amount = 0.0;
};

/// Backend-neutral mixed-binary linear program, minimization.
class MilpModel {
 public:
  int add_variable(std::string name, VarKind kind, double lower, double upper,
                   double objective = 0.0);
  int add_constraint(std::string name, std::vector<LinearTerm> terms,
                     Sense sense, double rhs);
  void add_group(AdjacencyGroup group) { groups_.push_back(std::move(group)); }
  void set_objective(int var, double coef) { objective_.at(var) = coef; }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<AdjacencyGroup>& groups() const { return groups_; }
  const std::vector<double>& objective() const { return objective_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  /// Index of a named variable, or -1.
  int index_of(std::string_view name) const;

  double objective_value(std::span<const double> x) const;

  /// Substitutes x into bounds, integrality (1e-6) and every row. A row is
  /// violated when it misses its right-hand side by more than
  /// tol * max(1, |rhs|).
  std::vector<Violation> check(std::span<const double> x,
                               double tol = 1e-6) const;
  bool feasible(std::span<const double> x, double tol = 1e-6) const {
    return check(x, tol).empty();
  }

  /// At most two positive weights per adjacency group, and adjacent.
  bool adjacency_holds(std::span<const double> x, double tol = 1e-6) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<AdjacencyGroup> groups_;
  std::vector<double> objective_;
  std::unordered_map<std::string, int> index_;
};

/// Breakpoint sets indexed [unit][period].
using BreakpointGrid = std::vector<std::vector<BreakpointSet>>;

/// Column indices of the unit-commitment variables, all indexed [unit][period].
struct UcpIndex {
  std::vector<std::vector<int>> y, x_on, x_off, s_hot, s_cold, p, group;
};

struct UcpModel {
  MilpModel model;
  UcpIndex index;
};

/// Builds the piecewise-linear unit-commitment MILP. Names follow
/// `y[u,t]`, `xon[u,t]`, `xoff[u,t]`, `shot[u,t]`, `scold[u,t]`, `p[u,t]`,
/// `z[u,t,k]`, `w[u,t,j]` with u the unit id and t the 1-based period.
UcpModel build_model(const Instance& inst, const BreakpointGrid& bps);

/// A complete assignment for a model, in variable declaration order.
struct WarmStart {
  std::vector<double> values;
};

/// Maps a solution of a coarser model onto `target`: binaries and p are
/// copied by name; weights and indicators are rebuilt from p on the target's
/// breakpoints. Throws Error if the result is not feasible.
WarmStart encode_warm_start(const UcpModel& target, const MilpModel& previous,
                            std::span<const double> previous_values);

/// Free-format MPS with integrality markers and explicit binary bounds.
std::string export_mps(const MilpModel& model);

/// Reads free-format MPS as written by export_mps (binaries only; general
/// integers are rejected). Throws ParseError.
MilpModel parse_mps(std::string_view text);

struct SolutionFile {
  std::vector<double> values;     // aligned with the model's variables
  std::vector<std::string> unknown;  // names not present in the model
  int missing = 0;                // model variables absent from the file
  bool has_bound = false;         // a "# bound <value>" line was present
  double bound = 0.0;
};

/// Parses `<name> <value>` lines; '#' starts a comment. Throws ParseError.
SolutionFile parse_solution(std::string_view text, const MilpModel& model);

std::string format_solution(const MilpModel& model,
                            std::span<const double> values);

}  // namespace valveuc
