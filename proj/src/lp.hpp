#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "milp.hpp"

namespace valveuc {

/// min c'x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper.
/// A is stored column-wise.
struct LpProblem {
  int num_cols = 0;
  int num_rows = 0;
  std::vector<int> col_start;  // size num_cols + 1
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> col_lower, col_upper;
  std::vector<double> row_lower, row_upper;
};

/// Continuous relaxation of a MILP (binaries become [0,1] columns).
LpProblem relax(const MilpModel& model);

enum class LpStatus { Optimal, Infeasible, Unbounded, Cutoff, NumericalFailure };

const char* to_string(LpStatus s);

/// Status of every column followed by every row logical.
struct Basis {
  enum : std::int8_t { kBasic = 0, kLower = 1, kUpper = 2, kZero = 3 };
  std::vector<std::int8_t> status;
  bool empty() const { return status.empty(); }
};

struct LpOutcome {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> primal;  // structural columns
  double objective = 0.0;
  long iterations = 0;
  Basis basis;
};

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 64;
  int bland_after = 1000;  // consecutive degenerate pivots
  long max_iterations = 0;  // 0: derived from problem size
};

/// Bounded-variable revised simplex. Keeps its basis between solves so that
/// bound changes can be re-optimized with the dual simplex.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& lp, SimplexOptions opt = {});
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  int num_cols() const { return n_; }
  int num_rows() const { return m_; }

  void set_col_bounds(int j, double lower, double upper);
  double col_lower(int j) const { return lo_[j]; }
  double col_upper(int j) const { return up_[j]; }
  /// Restores every column bound to the problem's original value.
  void reset_bounds();

  /// Installs a basis. An invalid or singular one falls back to the slack
  /// basis on the next solve.
  void set_basis(const Basis& b);
  Basis basis() const;

  /// Re-optimizes from the current basis. With a finite cutoff the dual
  /// simplex stops early (status Cutoff) once the objective provably exceeds it.
  LpStatus solve(double cutoff = std::numeric_limits<double>::infinity());

  double objective() const;
  std::vector<double> primal() const;
  double value(int j) const { return x_[j]; }
  long iterations() const { return iterations_; }

 private:
  enum class Phase { One, Two };

  bool refactor();
  void slack_basis();
  void compute_primal();
  void compute_duals(const std::vector<double>& cost);
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  void column(int j, std::vector<double>& out) const;
  void pivot_row(const std::vector<double>& rho, std::vector<double>& alpha) const;
  void push_eta(int r, const std::vector<double>& alpha);
  void nonbasic_at_bound(int j);
  double infeasibility(int j) const;
  bool limit_reached() const;

  LpStatus primal_simplex();
  LpStatus dual_simplex(double cutoff, bool& fallback);
  bool make_dual_feasible();

  SimplexOptions opt_;
  int n_ = 0, m_ = 0;
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<int> row_start_, row_col_;
  std::vector<double> row_val_;
  std::vector<double> cost_, lo_, up_, orig_lo_, orig_up_;
  std::vector<double> x_, d_;
  std::vector<std::int8_t> status_;
  std::vector<int> head_, pos_;

  struct Factor;
  std::unique_ptr<Factor> factor_;
  struct Eta {
    int r;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
  };
  std::vector<Eta> etas_;
  bool basis_valid_ = false;
  bool factor_valid_ = false;
  long iterations_ = 0;
  long solve_iterations_ = 0;

  mutable std::vector<double> work_;
};

/// Solves the continuous relaxation of `model` from scratch or from a hint.
LpOutcome solve_lp(const MilpModel& model, const Basis* hint = nullptr);

}  // namespace valveuc
