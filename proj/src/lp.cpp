#include "lp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace valveuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Cutoff: return "cutoff";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

LpProblem relax(const MilpModel& model) {
  LpProblem lp;
  lp.num_cols = static_cast<int>(model.num_variables());
  lp.num_rows = static_cast<int>(model.num_constraints());
  std::vector<int> count(lp.num_cols + 1, 0);
  for (const auto& c : model.constraints())
    for (const auto& t : c.terms) ++count[t.var + 1];
  for (int j = 0; j < lp.num_cols; ++j) count[j + 1] += count[j];
  lp.col_start = count;
  lp.row_index.resize(count.back());
  lp.value.resize(count.back());
  std::vector<int> fill(count.begin(), count.end() - 1);
  for (std::size_t i = 0; i < model.constraints().size(); ++i) {
    const auto& c = model.constraints()[i];
    for (const auto& t : c.terms) {
      int k = fill[t.var]++;
      lp.row_index[k] = static_cast<int>(i);
      lp.value[k] = t.coef;
    }
    switch (c.sense) {
      case Sense::LessEqual:
        lp.row_lower.push_back(-kInf);
        lp.row_upper.push_back(c.rhs);
        break;
      case Sense::GreaterEqual:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(kInf);
        break;
      case Sense::Equal:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(c.rhs);
        break;
    }
  }
  lp.cost = model.objective();
  for (const auto& v : model.variables()) {
    lp.col_lower.push_back(v.lower);
    lp.col_upper.push_back(v.upper);
  }
  return lp;
}

struct SimplexSolver::Factor {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  Eigen::VectorXd buf;
  std::vector<Eigen::Triplet<double>> triplets;
};

SimplexSolver::SimplexSolver(const LpProblem& lp, SimplexOptions opt)
    : opt_(opt),
      n_(lp.num_cols),
      m_(lp.num_rows),
      col_start_(lp.col_start),
      col_row_(lp.row_index),
      col_val_(lp.value),
      factor_(std::make_unique<Factor>()) {
  const int N = n_ + m_;
  // Row-wise copy for pivot rows.
  row_start_.assign(m_ + 1, 0);
  for (int k = 0; k < static_cast<int>(col_row_.size()); ++k) ++row_start_[col_row_[k] + 1];
  for (int i = 0; i < m_; ++i) row_start_[i + 1] += row_start_[i];
  row_col_.resize(col_row_.size());
  row_val_.resize(col_row_.size());
  std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
  for (int j = 0; j < n_; ++j)
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      int p = fill[col_row_[k]]++;
      row_col_[p] = j;
      row_val_[p] = col_val_[k];
    }

  cost_.assign(N, 0.0);
  std::copy(lp.cost.begin(), lp.cost.end(), cost_.begin());
  lo_.resize(N);
  up_.resize(N);
  for (int j = 0; j < n_; ++j) {
    lo_[j] = lp.col_lower[j];
    up_[j] = lp.col_upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    lo_[n_ + i] = lp.row_lower[i];
    up_[n_ + i] = lp.row_upper[i];
  }
  orig_lo_ = lo_;
  orig_up_ = up_;
  x_.assign(N, 0.0);
  d_.assign(N, 0.0);
  status_.assign(N, Basis::kLower);
  head_.assign(m_, -1);
  pos_.assign(N, -1);
  work_.assign(m_, 0.0);
  factor_->buf.resize(m_);
  if (opt_.max_iterations <= 0) opt_.max_iterations = 50L * (N + 1) + 20000;
}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::nonbasic_at_bound(int j) {
  if (std::isfinite(lo_[j])) {
    status_[j] = Basis::kLower;
    x_[j] = lo_[j];
  } else if (std::isfinite(up_[j])) {
    status_[j] = Basis::kUpper;
    x_[j] = up_[j];
  } else {
    status_[j] = Basis::kZero;
    x_[j] = 0.0;
  }
}

void SimplexSolver::slack_basis() {
  for (int j = 0; j < n_; ++j) {
    nonbasic_at_bound(j);
    pos_[j] = -1;
  }
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
    status_[n_ + i] = Basis::kBasic;
  }
  basis_valid_ = true;
  factor_valid_ = false;
}

void SimplexSolver::set_col_bounds(int j, double lower, double upper) {
  lo_[j] = lower;
  up_[j] = upper;
  if (status_[j] == Basis::kBasic) return;
  if (status_[j] == Basis::kUpper && std::isfinite(upper)) x_[j] = upper;
  else if (status_[j] == Basis::kLower && std::isfinite(lower)) x_[j] = lower;
  else nonbasic_at_bound(j);
}

void SimplexSolver::reset_bounds() {
  for (int j = 0; j < n_; ++j)
    if (lo_[j] != orig_lo_[j] || up_[j] != orig_up_[j])
      set_col_bounds(j, orig_lo_[j], orig_up_[j]);
}

void SimplexSolver::set_basis(const Basis& b) {
  const int N = n_ + m_;
  if (static_cast<int>(b.status.size()) != N ||
      std::count(b.status.begin(), b.status.end(), Basis::kBasic) != m_) {
    basis_valid_ = false;
    return;
  }
  int r = 0;
  for (int j = 0; j < N; ++j) {
    if (b.status[j] == Basis::kBasic) {
      status_[j] = Basis::kBasic;
      head_[r] = j;
      pos_[j] = r++;
      continue;
    }
    pos_[j] = -1;
    status_[j] = b.status[j];
    if (b.status[j] == Basis::kLower && std::isfinite(lo_[j])) x_[j] = lo_[j];
    else if (b.status[j] == Basis::kUpper && std::isfinite(up_[j])) x_[j] = up_[j];
    else nonbasic_at_bound(j);
  }
  basis_valid_ = true;
  factor_valid_ = false;
}

Basis SimplexSolver::basis() const {
  Basis b;
  b.status = status_;
  return b;
}

bool SimplexSolver::refactor() {
  auto& f = *factor_;
  etas_.clear();
  factor_valid_ = false;
  if (m_ == 0) {
    factor_valid_ = true;
    return true;
  }
  f.triplets.clear();
  for (int i = 0; i < m_; ++i) {
    int j = head_[i];
    if (j < n_) {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
        f.triplets.emplace_back(col_row_[k], i, col_val_[k]);
    } else {
      f.triplets.emplace_back(j - n_, i, -1.0);
    }
  }
  Eigen::SparseMatrix<double> B(m_, m_);
  B.setFromTriplets(f.triplets.begin(), f.triplets.end());
  B.makeCompressed();
  f.lu.analyzePattern(B);
  f.lu.factorize(B);
  if (f.lu.info() != Eigen::Success) return false;
  factor_valid_ = true;
  return true;
}

void SimplexSolver::ftran(std::vector<double>& v) const {
  auto& f = *factor_;
  if (m_ == 0) return;
  for (int i = 0; i < m_; ++i) f.buf[i] = v[i];
  f.buf = f.lu.solve(f.buf);
  for (int i = 0; i < m_; ++i) v[i] = f.buf[i];
  for (const Eta& e : etas_) {
    double xr = v[e.r] / e.pivot;
    if (xr != 0.0)
      for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * xr;
    v[e.r] = xr;
  }
}

void SimplexSolver::btran(std::vector<double>& v) const {
  auto& f = *factor_;
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->r];
    for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
    v[it->r] = s / it->pivot;
  }
  for (int i = 0; i < m_; ++i) f.buf[i] = v[i];
  f.buf = f.lu.transpose().solve(f.buf);
  for (int i = 0; i < m_; ++i) v[i] = f.buf[i];
}

void SimplexSolver::column(int j, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (j < n_) {
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) out[col_row_[k]] = col_val_[k];
  } else {
    out[j - n_] = -1.0;
  }
}

void SimplexSolver::pivot_row(const std::vector<double>& rho,
                              std::vector<double>& alpha) const {
  std::fill(alpha.begin(), alpha.end(), 0.0);
  for (int i = 0; i < m_; ++i) {
    const double r = rho[i];
    if (r == 0.0) continue;
    for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) alpha[row_col_[k]] += r * row_val_[k];
    alpha[n_ + i] = -r;
  }
}

void SimplexSolver::push_eta(int r, const std::vector<double>& alpha) {
  Eta e;
  e.r = r;
  e.pivot = alpha[r];
  for (int i = 0; i < m_; ++i)
    if (i != r && alpha[i] != 0.0) {
      e.idx.push_back(i);
      e.val.push_back(alpha[i]);
    }
  etas_.push_back(std::move(e));
}

void SimplexSolver::compute_primal() {
  std::vector<double>& rhs = work_;
  std::fill(rhs.begin(), rhs.end(), 0.0);
  for (int j = 0; j < n_; ++j) {
    if (status_[j] == Basis::kBasic || x_[j] == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[col_row_[k]] -= col_val_[k] * x_[j];
  }
  for (int i = 0; i < m_; ++i) {
    int j = n_ + i;
    if (status_[j] != Basis::kBasic) rhs[i] += x_[j];
  }
  ftran(rhs);
  for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
}

void SimplexSolver::compute_duals(const std::vector<double>& cost) {
  std::vector<double>& y = work_;
  for (int i = 0; i < m_; ++i) y[i] = cost[head_[i]];
  btran(y);
  for (int j = 0; j < n_; ++j) {
    if (status_[j] == Basis::kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double s = cost[j];
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) s -= col_val_[k] * y[col_row_[k]];
    d_[j] = s;
  }
  for (int i = 0; i < m_; ++i) {
    int j = n_ + i;
    d_[j] = status_[j] == Basis::kBasic ? 0.0 : cost[j] + y[i];
  }
}

double SimplexSolver::infeasibility(int j) const {
  if (x_[j] < lo_[j]) return lo_[j] - x_[j];
  if (x_[j] > up_[j]) return x_[j] - up_[j];
  return 0.0;
}

bool SimplexSolver::limit_reached() const {
  return solve_iterations_ >= opt_.max_iterations;
}

double SimplexSolver::objective() const {
  double v = 0.0;
  for (int j = 0; j < n_; ++j) v += cost_[j] * x_[j];
  return v;
}

std::vector<double> SimplexSolver::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

LpStatus SimplexSolver::primal_simplex() {
  const int N = n_ + m_;
  const double tolP = opt_.primal_tol, tolD = opt_.dual_tol;
  std::vector<double> c1(N, 0.0), alpha(m_);
  int degenerate = 0;

  while (true) {
    if (limit_reached()) return LpStatus::NumericalFailure;
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      if (!refactor()) return LpStatus::NumericalFailure;
      compute_primal();
    }

    // Phase selection from the current basic values.
    bool phase_one = false;
    for (int i = 0; i < m_; ++i) {
      int j = head_[i];
      c1[j] = 0.0;
      if (x_[j] < lo_[j] - tolP) { c1[j] = -1.0; phase_one = true; }
      else if (x_[j] > up_[j] + tolP) { c1[j] = 1.0; phase_one = true; }
    }
    compute_duals(phase_one ? c1 : cost_);
    for (int i = 0; i < m_; ++i) c1[head_[i]] = 0.0;

    // Entering column: Dantzig, or Bland after a long degenerate run.
    const bool bland = degenerate > opt_.bland_after;
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < N; ++j) {
      const auto st = status_[j];
      if (st == Basis::kBasic || lo_[j] == up_[j]) continue;
      const double dj = d_[j];
      bool ok = (st == Basis::kLower && dj < -tolD) || (st == Basis::kUpper && dj > tolD) ||
                (st == Basis::kZero && std::abs(dj) > tolD);
      if (!ok) continue;
      if (bland) { q = j; break; }
      if (std::abs(dj) > best) { best = std::abs(dj); q = j; }
    }
    if (q < 0) return phase_one ? LpStatus::Infeasible : LpStatus::Optimal;

    const double dir = d_[q] < 0 ? 1.0 : -1.0;
    column(q, alpha);
    ftran(alpha);

    // Harris ratio test, pass 1: largest step with relaxed bounds.
    double bound = kInf;
    auto limit_of = [&](int i, bool relaxed, double& target) -> double {
      const double a = alpha[i];
      if (std::abs(a) < opt_.pivot_tol) return kInf;
      const double rate = -dir * a;  // change of the basic per unit step
      const int j = head_[i];
      const double xj = x_[j];
      const double slack = relaxed ? tolP : 0.0;
      if (rate < 0) {
        if (xj > up_[j] + tolP) { target = up_[j]; return (xj - up_[j]) / -rate; }
        if (xj < lo_[j] - tolP || !std::isfinite(lo_[j])) return kInf;
        target = lo_[j];
        return std::max(0.0, xj - lo_[j] + slack) / -rate;
      }
      if (xj < lo_[j] - tolP) { target = lo_[j]; return (lo_[j] - xj) / rate; }
      if (xj > up_[j] + tolP || !std::isfinite(up_[j])) return kInf;
      target = up_[j];
      return std::max(0.0, up_[j] - xj + slack) / rate;
    };
    double target = 0.0;
    for (int i = 0; i < m_; ++i) bound = std::min(bound, limit_of(i, true, target));

    const double flip = (std::isfinite(lo_[q]) && std::isfinite(up_[q])) ? up_[q] - lo_[q] : kInf;

    // Pass 2: among rows within the relaxed step, the largest pivot.
    int r = -1;
    double r_step = 0.0, r_target = 0.0, r_piv = 0.0;
    for (int i = 0; i < m_; ++i) {
      double tgt = 0.0;
      double lim = limit_of(i, false, tgt);
      if (lim == kInf || lim > bound) continue;
      const double piv = std::abs(alpha[i]);
      bool take = r < 0 || (bland ? (head_[i] < head_[r] && lim <= r_step) || lim < r_step
                                  : piv > r_piv);
      if (take) { r = i; r_step = lim; r_target = tgt; r_piv = piv; }
    }

    if (r < 0 && flip == kInf) return phase_one ? LpStatus::NumericalFailure : LpStatus::Unbounded;

    ++iterations_;
    ++solve_iterations_;
    if (r < 0 || flip <= r_step) {
      // Bound flip of the entering column, no basis change.
      for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * flip * alpha[i];
      if (status_[q] == Basis::kLower) { status_[q] = Basis::kUpper; x_[q] = up_[q]; }
      else { status_[q] = Basis::kLower; x_[q] = lo_[q]; }
      degenerate = 0;
      continue;
    }

    const double theta = r_step;
    x_[q] += dir * theta;
    for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * theta * alpha[i];
    const int p = head_[r];
    x_[p] = r_target;
    status_[p] = (r_target == lo_[p]) ? Basis::kLower : Basis::kUpper;
    pos_[p] = -1;
    head_[r] = q;
    pos_[q] = r;
    status_[q] = Basis::kBasic;
    push_eta(r, alpha);
    degenerate = theta < 1e-12 ? degenerate + 1 : 0;
  }
}

bool SimplexSolver::make_dual_feasible() {
  const int N = n_ + m_;
  const double tolD = opt_.dual_tol;
  bool flipped = false;
  for (int j = 0; j < N; ++j) {
    const auto st = status_[j];
    if (st == Basis::kBasic || lo_[j] == up_[j]) continue;
    if (st == Basis::kLower && d_[j] < -tolD) {
      if (!std::isfinite(up_[j])) return false;
      status_[j] = Basis::kUpper;
      x_[j] = up_[j];
      flipped = true;
    } else if (st == Basis::kUpper && d_[j] > tolD) {
      if (!std::isfinite(lo_[j])) return false;
      status_[j] = Basis::kLower;
      x_[j] = lo_[j];
      flipped = true;
    } else if (st == Basis::kZero && std::abs(d_[j]) > tolD) {
      return false;
    }
  }
  if (flipped) compute_primal();
  return true;
}

LpStatus SimplexSolver::dual_simplex(double cutoff, bool& fallback) {
  const int N = n_ + m_;
  const double tolP = opt_.primal_tol, tolD = opt_.dual_tol;
  std::vector<double> rho(m_), alpha_row(N), alpha_col(m_);
  fallback = false;
  int mismatches = 0;

  while (true) {
    if (limit_reached()) return LpStatus::NumericalFailure;
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      if (!refactor()) return LpStatus::NumericalFailure;
      compute_primal();
      compute_duals(cost_);
      if (!make_dual_feasible()) {
        fallback = true;
        return LpStatus::NumericalFailure;
      }
    }

    if (std::isfinite(cutoff)) {
      const double obj = objective();
      if (obj > cutoff + 1e-9 * std::max(1.0, std::abs(cutoff))) return LpStatus::Cutoff;
    }

    // Leaving row: largest bound violation.
    int r = -1;
    double worst = tolP;
    for (int i = 0; i < m_; ++i) {
      double inf = infeasibility(head_[i]);
      if (inf > worst) { worst = inf; r = i; }
    }
    if (r < 0) return LpStatus::Optimal;

    const int p = head_[r];
    const double s = x_[p] < lo_[p] ? 1.0 : -1.0;
    const double target = s > 0 ? lo_[p] : up_[p];

    std::fill(rho.begin(), rho.end(), 0.0);
    rho[r] = 1.0;
    btran(rho);
    pivot_row(rho, alpha_row);

    // Harris ratio test on the reduced costs.
    double bound = kInf;
    for (int j = 0; j < N; ++j) {
      const auto st = status_[j];
      if (st == Basis::kBasic || lo_[j] == up_[j]) continue;
      const double sa = s * alpha_row[j];
      if (st == Basis::kLower && sa < -opt_.pivot_tol) bound = std::min(bound, (d_[j] + tolD) / -sa);
      else if (st == Basis::kUpper && sa > opt_.pivot_tol) bound = std::min(bound, (-d_[j] + tolD) / sa);
      else if (st == Basis::kZero && std::abs(sa) > opt_.pivot_tol) bound = std::min(bound, tolD / std::abs(sa));
    }
    if (bound == kInf) return LpStatus::Infeasible;

    int q = -1;
    double q_ratio = 0.0, q_piv = 0.0;
    for (int j = 0; j < N; ++j) {
      const auto st = status_[j];
      if (st == Basis::kBasic || lo_[j] == up_[j]) continue;
      const double sa = s * alpha_row[j];
      double ratio;
      if (st == Basis::kLower && sa < -opt_.pivot_tol) ratio = std::max(0.0, d_[j]) / -sa;
      else if (st == Basis::kUpper && sa > opt_.pivot_tol) ratio = std::max(0.0, -d_[j]) / sa;
      else if (st == Basis::kZero && std::abs(sa) > opt_.pivot_tol) ratio = 0.0;
      else continue;
      if (ratio > bound) continue;
      if (std::abs(sa) > q_piv) { q = j; q_ratio = ratio; q_piv = std::abs(sa); }
    }
    if (q < 0) return LpStatus::Infeasible;

    column(q, alpha_col);
    ftran(alpha_col);
    const double arq = alpha_col[r];
    if (std::abs(arq - alpha_row[q]) > 1e-7 * (1.0 + std::abs(arq)) || std::abs(arq) < opt_.pivot_tol) {
      // Row and column disagree: the factorization drifted.
      if (++mismatches > 3) {
        fallback = true;
        return LpStatus::NumericalFailure;
      }
      if (!refactor()) return LpStatus::NumericalFailure;
      compute_primal();
      compute_duals(cost_);
      if (!make_dual_feasible()) {
        fallback = true;
        return LpStatus::NumericalFailure;
      }
      continue;
    }

    ++iterations_;
    ++solve_iterations_;
    const double t = q_ratio;
    const double delta = (x_[p] - target) / arq;
    x_[q] += delta;
    for (int i = 0; i < m_; ++i) x_[head_[i]] -= delta * alpha_col[i];
    x_[p] = target;

    for (int j = 0; j < N; ++j)
      if (status_[j] != Basis::kBasic) d_[j] += s * t * alpha_row[j];
    d_[p] = s * t;
    d_[q] = 0.0;

    status_[p] = s > 0 ? Basis::kLower : Basis::kUpper;
    if (lo_[p] == up_[p]) status_[p] = Basis::kLower;
    pos_[p] = -1;
    head_[r] = q;
    pos_[q] = r;
    status_[q] = Basis::kBasic;
    push_eta(r, alpha_col);
  }
}

LpStatus SimplexSolver::solve(double cutoff) {
  solve_iterations_ = 0;
  if (!basis_valid_) slack_basis();
  if (!factor_valid_ && !refactor()) {
    slack_basis();
    if (!refactor()) return LpStatus::NumericalFailure;
  }
  compute_primal();

  bool restarted = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    compute_duals(cost_);
    LpStatus st;
    bool fallback = false;
    if (make_dual_feasible()) {
      st = dual_simplex(cutoff, fallback);
      if (fallback) {
        if (!refactor()) {
          slack_basis();
          refactor();
        }
        compute_primal();
        st = primal_simplex();
      }
    } else {
      st = primal_simplex();
    }

    if (st == LpStatus::Cutoff || st == LpStatus::Unbounded) return st;
    if (st == LpStatus::NumericalFailure) {
      if (restarted) return st;
      restarted = true;
      slack_basis();
      if (!refactor()) return st;
      compute_primal();
      continue;
    }

    // Verify from a fresh factorization before trusting the verdict.
    if (!refactor()) {
      slack_basis();
      if (!refactor()) return LpStatus::NumericalFailure;
      compute_primal();
      continue;
    }
    compute_primal();
    compute_duals(cost_);
    double pinf = 0.0, dinf = 0.0;
    for (int i = 0; i < m_; ++i) pinf = std::max(pinf, infeasibility(head_[i]));
    for (int j = 0; j < n_ + m_; ++j) {
      const auto stj = status_[j];
      if (stj == Basis::kBasic || lo_[j] == up_[j]) continue;
      if (stj == Basis::kLower) dinf = std::max(dinf, -d_[j]);
      else if (stj == Basis::kUpper) dinf = std::max(dinf, d_[j]);
      else dinf = std::max(dinf, std::abs(d_[j]));
    }
    if (st == LpStatus::Infeasible) {
      // Confirm with the primal phase one from the refreshed basis.
      if (pinf <= opt_.primal_tol) continue;
      if (attempt > 0) return st;
      st = primal_simplex();
      if (st == LpStatus::Infeasible) return st;
      continue;
    }
    if (pinf <= 10 * opt_.primal_tol && dinf <= 10 * opt_.dual_tol) {
      // Clean tiny bound violations left by the relaxed ratio tests.
      for (int i = 0; i < m_; ++i) {
        int j = head_[i];
        x_[j] = std::clamp(x_[j], lo_[j], up_[j]);
      }
      return LpStatus::Optimal;
    }
  }
  return LpStatus::NumericalFailure;
}

LpOutcome solve_lp(const MilpModel& model, const Basis* hint) {
  LpProblem lp = relax(model);
  SimplexSolver solver(lp);
  if (hint) solver.set_basis(*hint);
  LpOutcome out;
  out.status = solver.solve();
  out.iterations = solver.iterations();
  if (out.status == LpStatus::Optimal) {
    out.primal = solver.primal();
    out.objective = solver.objective();
  }
  out.basis = solver.basis();
  return out;
}

}  // namespace valveuc
