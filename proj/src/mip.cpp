#include "mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "error.hpp"

namespace valveuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;
constexpr double kRelFloor = 1e-9;

struct BoundChange {
  int var;
  double lo, up;
};

struct Node {
  std::vector<BoundChange> changes;
  double bound = -kInf;
  long seq = 0;
  Basis basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

struct Branch {
  std::vector<BoundChange> left, right;
  bool left_first = true;
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MipLimits& limits)
      : model_(model), limits_(limits), lp_(relax(model)), solver_(lp_) {
    const int n = static_cast<int>(model.num_variables());
    in_group_.assign(n, false);
    for (const auto& g : model.groups())
      for (int j : g.indicators) in_group_[j] = true;
    for (int j = 0; j < n; ++j)
      if (model.variables()[j].kind == VarKind::Binary && !in_group_[j]) free_binaries_.push_back(j);
  }

  MipOutcome run(const WarmStart* start);

 private:
  double prune_level() const {
    if (!out_.has_incumbent) return kInf;
    const double inc = out_.objective;
    return inc - std::max(limits_.gap * std::abs(inc), kRelFloor * std::max(1.0, std::abs(inc)));
  }
  bool out_of_time() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() >=
           limits_.time_seconds;
  }
  bool offer(std::vector<double> x);
  void apply(const std::vector<BoundChange>& changes, std::size_t from) {
    for (std::size_t i = from; i < changes.size(); ++i)
      solver_.set_col_bounds(changes[i].var, changes[i].lo, changes[i].up);
  }
  LpStatus solve_node(double cutoff);
  bool repair(const std::vector<double>& x, std::vector<double>& fixed) const;
  bool choose_branch(const std::vector<double>& x, Branch& br) const;
  bool group_branch(const std::vector<double>& x, Branch& br) const;

  const MilpModel& model_;
  MipLimits limits_;
  LpProblem lp_;
  SimplexSolver solver_;
  std::vector<bool> in_group_;
  std::vector<int> free_binaries_;
  std::chrono::steady_clock::time_point start_;
  MipOutcome out_;
  double pruned_min_ = kInf;
};

bool BranchAndBound::offer(std::vector<double> x) {
  // Snap binaries when that keeps every row satisfied.
  std::vector<double> snapped = x;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (model_.variables()[j].kind == VarKind::Binary) snapped[j] = std::round(x[j]);
  if (model_.feasible(snapped)) x = std::move(snapped);
  else if (!model_.feasible(x)) return false;
  if (!model_.adjacency_holds(x)) return false;
  const double obj = model_.objective_value(x);
  if (!out_.has_incumbent || obj < out_.objective) {
    out_.has_incumbent = true;
    out_.objective = obj;
    out_.incumbent = std::move(x);
  }
  return true;
}

LpStatus BranchAndBound::solve_node(double cutoff) {
  LpStatus st = solver_.solve(cutoff);
  if (st == LpStatus::NumericalFailure) {
    solver_.set_basis(Basis{});
    st = solver_.solve(cutoff);
  }
  if (st == LpStatus::NumericalFailure)
    throw Error("linear programming relaxation failed numerically");
  return st;
}

// Rewrites every group's weights onto the segment bracketing its position
// and sets that segment's indicator.
bool BranchAndBound::repair(const std::vector<double>& x, std::vector<double>& fixed) const {
  fixed = x;
  for (int j : free_binaries_) fixed[j] = std::round(x[j]);
  for (const auto& g : model_.groups()) {
    double s = 0.0, px = 0.0;
    for (std::size_t k = 0; k < g.weights.size(); ++k) {
      s += x[g.weights[k]];
      px += g.positions[k] * x[g.weights[k]];
    }
    const double sr = std::round(s);
    if (std::abs(s - sr) > kIntTol || sr < 0.0 || sr > 1.0) return false;
    for (int k : g.weights) fixed[k] = 0.0;
    for (int j : g.indicators) fixed[j] = 0.0;
    if (sr == 0.0) continue;
    const auto& pos = g.positions;
    if (g.indicators.empty()) {
      fixed[g.weights[0]] = 1.0;
      continue;
    }
    const double pbar = std::clamp(px / s, pos.front(), pos.back());
    auto it = std::upper_bound(pos.begin(), pos.end(), pbar);
    std::size_t seg = it == pos.begin() ? 0 : static_cast<std::size_t>(it - pos.begin()) - 1;
    seg = std::min(seg, g.indicators.size() - 1);
    const double lam = (pbar - pos[seg]) / (pos[seg + 1] - pos[seg]);
    fixed[g.weights[seg]] = 1.0 - lam;
    fixed[g.weights[seg + 1]] = lam;
    fixed[g.indicators[seg]] = 1.0;
  }
  return true;
}

bool BranchAndBound::group_branch(const std::vector<double>& x, Branch& br) const {
  const auto& obj = model_.objective();
  int best = -1, best_r = -1;
  double best_score = -kInf;
  for (std::size_t gi = 0; gi < model_.groups().size(); ++gi) {
    const auto& g = model_.groups()[gi];
    int kmin = -1, kmax = -1;
    double s = 0.0, px = 0.0, cost = 0.0;
    for (std::size_t k = 0; k < g.weights.size(); ++k) {
      const double v = x[g.weights[k]];
      s += v;
      px += g.positions[k] * v;
      cost += obj[g.weights[k]] * v;
      if (v > kIntTol * 1e-3) {
        if (kmin < 0) kmin = static_cast<int>(k);
        kmax = static_cast<int>(k);
      }
    }
    if (kmin < 0 || kmax - kmin < 2) continue;
    const auto& pos = g.positions;
    const double pbar = px / s;
    // Interpolated value at pbar minus the weights' cost.
    auto it = std::upper_bound(pos.begin(), pos.end(), pbar);
    std::size_t seg = it == pos.begin() ? 0 : static_cast<std::size_t>(it - pos.begin()) - 1;
    seg = std::min(seg, pos.size() - 2);
    const double lam = std::clamp((pbar - pos[seg]) / (pos[seg + 1] - pos[seg]), 0.0, 1.0);
    const double interp = (1 - lam) * obj[g.weights[seg]] + lam * obj[g.weights[seg + 1]];
    const double score = s * interp - cost;
    if (score > best_score) {
      int r = -1;
      double dist = kInf;
      for (int k = kmin + 1; k < kmax; ++k)
        if (std::abs(pos[k] - pbar) < dist) {
          dist = std::abs(pos[k] - pbar);
          r = k;
        }
      best = static_cast<int>(gi);
      best_r = r;
      best_score = score;
      br.left_first = pbar <= pos[r];
    }
  }
  if (best < 0) return false;
  const auto& g = model_.groups()[best];
  const int K = static_cast<int>(g.weights.size());
  br.left.clear();
  br.right.clear();
  for (int k = 0; k < K; ++k) {
    const int zk = g.weights[k];
    const auto& v = model_.variables()[zk];
    if (k > best_r) br.left.push_back({zk, v.lower, 0.0});
    if (k < best_r) br.right.push_back({zk, v.lower, 0.0});
  }
  for (int j = 0; j + 1 < K; ++j) {
    const int wj = g.indicators[j];
    if (j >= best_r) br.left.push_back({wj, 0.0, 0.0});
    else br.right.push_back({wj, 0.0, 0.0});
  }
  return true;
}

bool BranchAndBound::choose_branch(const std::vector<double>& x, Branch& br) const {
  int q = -1;
  double best = kIntTol;
  for (int j : free_binaries_) {
    const double f = std::abs(x[j] - std::round(x[j]));
    if (f > best) {
      best = f;
      q = j;
    }
  }
  if (q >= 0) {
    br.left = {{q, 0.0, 0.0}};
    br.right = {{q, 1.0, 1.0}};
    br.left_first = x[q] < 0.5;
    return true;
  }
  if (group_branch(x, br)) return true;
  // Fractional indicators with adjacent weights: branch on them directly.
  for (const auto& g : model_.groups())
    for (int j : g.indicators) {
      const double f = std::abs(x[j] - std::round(x[j]));
      if (f > best) {
        best = f;
        q = j;
      }
    }
  if (q < 0) return false;
  br.left = {{q, 0.0, 0.0}};
  br.right = {{q, 1.0, 1.0}};
  br.left_first = x[q] < 0.5;
  return true;
}

MipOutcome BranchAndBound::run(const WarmStart* start) {
  start_ = std::chrono::steady_clock::now();
  if (start && start->values.size() == model_.num_variables()) offer(start->values);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push(Node{{}, -kInf, seq++, {}});
  bool timed_out = false;
  bool root = true;

  while (!open.empty() && !timed_out) {
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_level()) {
      pruned_min_ = std::min(pruned_min_, node.bound);
      continue;
    }
    solver_.reset_bounds();
    apply(node.changes, 0);
    if (!node.basis.empty()) solver_.set_basis(node.basis);

    // Plunge from this node until the dive ends.
    while (true) {
      if (out_of_time()) {
        open.push(std::move(node));
        timed_out = true;
        break;
      }
      ++out_.nodes;
      const double cutoff = prune_level();
      const LpStatus st = solve_node(cutoff);
      if (st == LpStatus::Unbounded) {
        if (root) throw Error("relaxation is unbounded");
        throw Error("unbounded node relaxation");
      }
      root = false;
      if (st == LpStatus::Infeasible) break;
      const double obj = std::max(node.bound, solver_.objective());
      if (st == LpStatus::Cutoff || obj >= prune_level()) {
        pruned_min_ = std::min(pruned_min_, obj);
        break;
      }
      const std::vector<double> x = solver_.primal();

      Branch br;
      bool need_branch = true;
      bool all_free_integral = std::all_of(free_binaries_.begin(), free_binaries_.end(), [&](int j) {
        return std::abs(x[j] - std::round(x[j])) <= kIntTol;
      });
      if (all_free_integral) {
        std::vector<double> fixed;
        if (repair(x, fixed)) {
          const double robj = model_.objective_value(fixed);
          if (offer(std::move(fixed)) && robj <= obj + kRelFloor * std::max(1.0, std::abs(obj)))
            need_branch = false;
        }
      }
      if (!need_branch) break;
      if (!choose_branch(x, br)) {
        offer(x);
        break;
      }

      const Basis basis = solver_.basis();
      Node left{node.changes, obj, seq++, basis};
      Node right{node.changes, obj, seq++, basis};
      const std::size_t base = node.changes.size();
      left.changes.insert(left.changes.end(), br.left.begin(), br.left.end());
      right.changes.insert(right.changes.end(), br.right.begin(), br.right.end());
      Node& dive = br.left_first ? left : right;
      Node& other = br.left_first ? right : left;
      open.push(std::move(other));
      node = std::move(dive);
      node.basis = Basis{};
      apply(node.changes, base);
    }
  }

  double bound = std::min(out_.has_incumbent ? out_.objective : kInf, pruned_min_);
  if (!open.empty()) bound = std::min(bound, open.top().bound);
  out_.best_bound = bound;
  out_.lp_iterations = solver_.iterations();
  out_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();

  if (timed_out) {
    out_.status = MipStatus::TimeLimit;
  } else if (!out_.has_incumbent) {
    out_.status = MipStatus::Infeasible;
  } else {
    out_.best_bound = std::min(out_.best_bound, out_.objective);
    const double gap = out_.objective - out_.best_bound;
    out_.status = gap <= kRelFloor * std::max(1.0, std::abs(out_.objective)) ? MipStatus::Optimal
                                                                             : MipStatus::GapLimit;
  }
  return out_;
}

}  // namespace

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::GapLimit: return "gap_limit";
    case MipStatus::TimeLimit: return "time_limit";
    case MipStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

double relative_gap(double incumbent, double bound) {
  return (incumbent - bound) / std::max(1e-9, std::abs(incumbent));
}

MipOutcome solve_mip(const MilpModel& model, const MipLimits& limits, const WarmStart* start) {
  if (model.num_variables() == 0) throw Error("model has no variables");
  if (!(limits.gap >= 0.0) || !(limits.time_seconds > 0.0)) throw Error("limits must be positive");
  BranchAndBound bb(model, limits);
  return bb.run(start);
}

}  // namespace valveuc
