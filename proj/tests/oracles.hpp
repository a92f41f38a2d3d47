#pragma once

// Independent reference implementations used as test oracles. None of them
// share code with the library beyond the model/instance data types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "instance.hpp"
#include "milp.hpp"

namespace oracle {

// Fuel cost in long double.
inline long double fuel_cost_ld(const valveuc::UnitParams& u, long double p) {
  long double s = std::sin(static_cast<long double>(u.f) * (static_cast<long double>(u.p_min) - p));
  return static_cast<long double>(u.a) + static_cast<long double>(u.b) * p +
         static_cast<long double>(u.c) * p * p + std::fabs(static_cast<long double>(u.e) * s);
}

enum class Verdict { Optimal, Infeasible, Unbounded };

struct DenseResult {
  Verdict verdict = Verdict::Infeasible;
  long double objective = 0;
  std::vector<long double> x;
};

// min c x  s.t.  A x (sense) b,  0 <= x <= upper (infinite allowed).
// Textbook two-phase tableau simplex with Bland's rule on the standard form.
// sense: -1 for <=, 0 for =, +1 for >=.
inline DenseResult tableau_simplex(const std::vector<double>& c,
                                   const std::vector<std::vector<double>>& A,
                                   const std::vector<int>& sense,
                                   const std::vector<double>& b,
                                   const std::vector<double>& upper) {
  using ld = long double;
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<ld>> rows;
  std::vector<ld> rhs;
  std::vector<int> kind;
  for (std::size_t i = 0; i < A.size(); ++i) {
    rows.emplace_back(A[i].begin(), A[i].end());
    rhs.push_back(b[i]);
    kind.push_back(sense[i]);
  }
  for (int j = 0; j < n; ++j)
    if (std::isfinite(upper[j])) {
      std::vector<ld> r(n, 0);
      r[j] = 1;
      rows.push_back(r);
      rhs.push_back(upper[j]);
      kind.push_back(-1);
    }
  const int m = static_cast<int>(rows.size());
  int slacks = 0;
  for (int k : kind) slacks += k != 0;
  // Columns: x (n), slacks, artificials (m), rhs.
  const int ns = n + slacks, na = ns + m, W = na + 1;
  std::vector<std::vector<ld>> T(m, std::vector<ld>(W, 0));
  std::vector<int> basis(m);
  int s = n;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = rows[i][j];
    if (kind[i] != 0) T[i][s++] = kind[i] < 0 ? 1 : -1;
    T[i][W - 1] = rhs[i];
    if (T[i][W - 1] < 0)
      for (auto& v : T[i]) v = -v;
    T[i][ns + i] = 1;
    basis[i] = ns + i;
  }
  const ld eps = 1e-12L;

  auto pivot = [&](int r, int q) {
    const ld p = T[r][q];
    for (auto& v : T[r]) v /= p;
    for (int i = 0; i < m; ++i)
      if (i != r && T[i][q] != 0) {
        const ld f = T[i][q];
        for (int j = 0; j < W; ++j) T[i][j] -= f * T[r][j];
      }
    basis[r] = q;
  };
  // Returns false when unbounded.
  auto run = [&](const std::vector<ld>& cost, int allowed) {
    while (true) {
      int q = -1;
      for (int j = 0; j < allowed && q < 0; ++j) {
        ld d = cost[j];
        for (int i = 0; i < m; ++i) d -= cost[basis[i]] * T[i][j];
        if (d < -1e-10L) q = j;
      }
      if (q < 0) return true;
      int r = -1;
      ld best = 0;
      for (int i = 0; i < m; ++i)
        if (T[i][q] > eps) {
          ld ratio = T[i][W - 1] / T[i][q];
          if (r < 0 || ratio < best - 1e-15L || (std::fabs(ratio - best) <= 1e-15L && basis[i] < basis[r])) {
            r = i;
            best = ratio;
          }
        }
      if (r < 0) return false;
      pivot(r, q);
    }
  };

  DenseResult res;
  std::vector<ld> c1(W - 1, 0);
  for (int j = ns; j < na; ++j) c1[j] = 1;
  run(c1, na);
  ld infeas = 0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= ns) infeas += T[i][W - 1];
  if (infeas > 1e-8L) return res;
  // Drive remaining artificials out of the basis.
  for (int i = 0; i < m; ++i)
    if (basis[i] >= ns)
      for (int j = 0; j < ns; ++j)
        if (std::fabs(T[i][j]) > 1e-9L) {
          pivot(i, j);
          break;
        }
  std::vector<ld> c2(W - 1, 0);
  for (int j = 0; j < n; ++j) c2[j] = c[j];
  if (!run(c2, ns)) {
    res.verdict = Verdict::Unbounded;
    return res;
  }
  res.verdict = Verdict::Optimal;
  res.x.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = T[i][W - 1];
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

// The tableau oracle on a model's continuous relaxation, bounds [0, upper].
inline DenseResult lp_reference(const valveuc::MilpModel& m) {
  std::vector<double> c = m.objective(), up;
  std::vector<std::vector<double>> A;
  std::vector<int> sense;
  std::vector<double> b;
  for (const auto& v : m.variables()) up.push_back(v.upper);
  for (const auto& row : m.constraints()) {
    std::vector<double> a(m.num_variables(), 0.0);
    for (const auto& t : row.terms) a[t.var] += t.coef;
    A.push_back(a);
    sense.push_back(row.sense == valveuc::Sense::LessEqual ? -1 : row.sense == valveuc::Sense::Equal ? 0 : 1);
    b.push_back(row.rhs);
  }
  return tableau_simplex(c, A, sense, b, up);
}

// Brute force over every assignment of a model's binaries; the remaining
// continuous LP of each assignment goes to the tableau oracle. Returns +inf
// when no assignment is feasible.
inline double enumerate_mip(const valveuc::MilpModel& model) {
  const int n = static_cast<int>(model.num_variables());
  std::vector<int> bins;
  for (int j = 0; j < n; ++j)
    if (model.variables()[j].kind == valveuc::VarKind::Binary) bins.push_back(j);
  double best = std::numeric_limits<double>::infinity();
  for (long mask = 0; mask < (1L << bins.size()); ++mask) {
    std::vector<double> fixed(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < bins.size(); ++i) fixed[bins[i]] = (mask >> i) & 1;
    // Shift to x' = x - lower and substitute fixed binaries into the rows.
    std::vector<int> cont;
    for (int j = 0; j < n; ++j)
      if (std::isnan(fixed[j])) cont.push_back(j);
    std::vector<double> c, up;
    double const_obj = 0;
    for (int j = 0; j < n; ++j) {
      const auto& v = model.variables()[j];
      if (!std::isnan(fixed[j])) const_obj += model.objective()[j] * fixed[j];
      else const_obj += model.objective()[j] * v.lower;
    }
    for (int j : cont) {
      const auto& v = model.variables()[j];
      c.push_back(model.objective()[j]);
      up.push_back(v.upper - v.lower);
    }
    std::vector<std::vector<double>> A;
    std::vector<int> sense;
    std::vector<double> b;
    bool bad = false;
    for (const auto& row : model.constraints()) {
      std::vector<double> a(cont.size(), 0.0);
      double rhs = row.rhs;
      for (const auto& t : row.terms) {
        if (!std::isnan(fixed[t.var])) {
          rhs -= t.coef * fixed[t.var];
        } else {
          auto it = std::find(cont.begin(), cont.end(), t.var);
          a[it - cont.begin()] += t.coef;
          rhs -= t.coef * model.variables()[t.var].lower;
        }
      }
      int s = row.sense == valveuc::Sense::LessEqual ? -1 : row.sense == valveuc::Sense::Equal ? 0 : 1;
      if (cont.empty()) {
        if ((s <= 0 && rhs < -1e-9) || (s >= 0 && rhs > 1e-9)) bad = true;
        continue;
      }
      A.push_back(a);
      sense.push_back(s);
      b.push_back(rhs);
    }
    if (bad) continue;
    double obj = const_obj;
    if (!cont.empty()) {
      auto r = tableau_simplex(c, A, sense, b, up);
      if (r.verdict != Verdict::Optimal) continue;
      obj += static_cast<double>(r.objective);
    }
    best = std::min(best, obj);
  }
  return best;
}

// Hand-simulated cost of a schedule: walks each unit's on/off history,
// counting off-periods since the last shutdown to classify starts.
inline double ledger_cost(const valveuc::Instance& inst,
                          const std::vector<std::vector<int>>& y,
                          const std::vector<std::vector<double>>& p) {
  double total = 0;
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& up = inst.units[u];
    int state = up.y_prev;
    int off_run = up.y_prev ? 0 : up.t_prev;  // consecutive off periods so far
    for (int t = 0; t < inst.periods; ++t) {
      if (y[u][t]) {
        if (!state) total += off_run > up.t_cold ? up.a_cold : up.a_hot;
        total += static_cast<double>(fuel_cost_ld(up, p[u][t]));
        off_run = 0;
      } else {
        ++off_run;
      }
      state = y[u][t];
    }
  }
  return total;
}

// Cheapest commitment and dispatch of a two-unit, one-period instance.
// Unit 0's output is scanned on a grid of `step` MW; the valve points of
// both units (where the cost has kinks) are added as candidates.
inline double brute_force_pair(const valveuc::Instance& inst, double step = 0.001) {
  const auto& A = inst.units.at(0);
  const auto& B = inst.units.at(1);
  const double D = inst.demand.at(0);
  auto startup = [](const valveuc::UnitParams& u) {
    if (u.y_prev) return 0.0;
    return u.t_prev > u.t_cold ? u.a_cold : u.a_hot;
  };
  auto kinks = [](const valveuc::UnitParams& u) {
    std::vector<double> v{u.p_min, u.p_max};
    if (u.e > 0 && u.f > 0)
      for (int k = 1; u.p_min + k * std::numbers::pi / u.f < u.p_max; ++k)
        v.push_back(u.p_min + k * std::numbers::pi / u.f);
    return v;
  };
  double best = std::numeric_limits<double>::infinity();
  for (const auto* u : {&A, &B})
    if (u->p_min <= D && D <= u->p_max)
      best = std::min(best, static_cast<double>(fuel_cost_ld(*u, D)) + startup(*u));
  const double lo = std::max(A.p_min, D - B.p_max), hi = std::min(A.p_max, D - B.p_min);
  if (lo <= hi) {
    const double fixed = startup(A) + startup(B);
    auto eval = [&](double pa) {
      if (pa < lo || pa > hi) return;
      const double pb = std::clamp(D - pa, B.p_min, B.p_max);
      best = std::min(best, static_cast<double>(fuel_cost_ld(A, pa) + fuel_cost_ld(B, pb)) + fixed);
    };
    const long n = static_cast<long>(std::ceil((hi - lo) / step));
    for (long i = 0; i <= n; ++i) eval(std::min(lo + step * static_cast<double>(i), hi));
    for (double v : kinks(A)) eval(v);
    for (double v : kinks(B)) eval(D - v);
  }
  return best;
}

}  // namespace oracle

