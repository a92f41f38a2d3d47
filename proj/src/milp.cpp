#include "milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "error.hpp"
#include "numfmt.hpp"

namespace valveuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string tag(const std::string& base, const std::string& u, int t) {
  return base + "[" + u + "," + std::to_string(t) + "]";
}

std::string tag(const std::string& base, const std::string& u, int t, int k) {
  return base + "[" + u + "," + std::to_string(t) + "," + std::to_string(k) +
         "]";
}

}  // namespace

// ---------------------------------------------------------------------------
// MilpModel

int MilpModel::add_variable(std::string name, VarKind kind, double lower,
                            double upper, double objective) {
  const int idx = static_cast<int>(variables_.size());
  if (!index_.emplace(name, idx).second)
    throw Error("duplicate variable name '" + name + "'");
  variables_.push_back({std::move(name), kind, lower, upper});
  objective_.push_back(objective);
  return idx;
}

int MilpModel::add_constraint(std::string name, std::vector<LinearTerm> terms,
                              Sense sense, double rhs) {
  for (const auto& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(variables_.size()))
      throw Error("constraint '" + name + "' references an undeclared variable");
  constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
  return static_cast<int>(constraints_.size()) - 1;
}

int MilpModel::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

double MilpModel::objective_value(std::span<const double> x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * x[j];
  return v;
}

std::vector<Violation> MilpModel::check(std::span<const double> x,
                                        double tol) const {
  std::vector<Violation> out;
  if (x.size() != variables_.size()) {
    out.push_back({"<dimension>", std::abs(static_cast<double>(x.size()) -
                                           static_cast<double>(variables_.size()))});
    return out;
  }
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const auto& v = variables_[j];
    const double xj = x[j];
    if (!std::isfinite(xj)) {
      out.push_back({v.name, kInf});
      continue;
    }
    double viol = std::max(v.lower - xj, xj - v.upper);
    if (viol > tol * std::max(1.0, std::abs(xj))) out.push_back({v.name, viol});
    if (v.kind == VarKind::Binary) {
      double frac = std::abs(xj - std::round(xj));
      if (frac > 1e-6) out.push_back({v.name, frac});
    }
  }
  for (const auto& c : constraints_) {
    double act = 0.0;
    for (const auto& t : c.terms) act += t.coef * x[t.var];
    double viol = 0.0;
    switch (c.sense) {
      case Sense::LessEqual: viol = act - c.rhs; break;
      case Sense::GreaterEqual: viol = c.rhs - act; break;
      case Sense::Equal: viol = std::abs(act - c.rhs); break;
    }
    if (viol > tol * std::max(1.0, std::abs(c.rhs))) out.push_back({c.name, viol});
  }
  return out;
}

bool MilpModel::adjacency_holds(std::span<const double> x, double tol) const {
  for (const auto& g : groups_) {
    int first = -1, last = -1, count = 0;
    for (std::size_t k = 0; k < g.weights.size(); ++k) {
      if (x[g.weights[k]] > tol) {
        if (first < 0) first = static_cast<int>(k);
        last = static_cast<int>(k);
        ++count;
      }
    }
    if (count > 2 || (count == 2 && last != first + 1)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Unit-commitment model

UcpModel build_model(const Instance& inst, const BreakpointGrid& bps) {
  const int T = inst.periods;
  const int U = static_cast<int>(inst.units.size());
  if (T < 1) throw Error("cannot build a model with an empty horizon");
  if (static_cast<int>(bps.size()) != U)
    throw Error("breakpoint grid does not cover every unit");
  for (int u = 0; u < U; ++u)
    if (static_cast<int>(bps[u].size()) != T)
      throw Error("missing breakpoint set for unit '" + inst.units[u].id + "'");

  UcpModel out;
  MilpModel& m = out.model;
  UcpIndex& ix = out.index;
  for (auto* tbl : {&ix.y, &ix.x_on, &ix.x_off, &ix.s_hot, &ix.s_cold, &ix.p,
                    &ix.group})
    tbl->assign(U, std::vector<int>(T, -1));

  using enum Sense;
  std::vector<std::vector<std::vector<int>>> z(U, std::vector<std::vector<int>>(T));
  std::vector<std::vector<std::vector<int>>> w(U, std::vector<std::vector<int>>(T));

  // Columns, period-major then unit.
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u < U; ++u) {
      const UnitParams& up = inst.units[u];
      const BreakpointSet& b = bps[u][t];
      if (b.size() == 0 || b.points().front().x != up.p_min ||
          b.points().back().x != up.p_max)
        throw Error("breakpoint set of unit '" + up.id +
                    "' does not span [pmin, pmax]");
      const std::string& id = up.id;
      const int per = t + 1;
      ix.y[u][t] = m.add_variable(tag("y", id, per), VarKind::Binary, 0, 1);
      ix.x_on[u][t] = m.add_variable(tag("xon", id, per), VarKind::Binary, 0, 1);
      ix.x_off[u][t] = m.add_variable(tag("xoff", id, per), VarKind::Binary, 0, 1);
      ix.s_hot[u][t] =
          m.add_variable(tag("shot", id, per), VarKind::Binary, 0, 1, up.a_hot);
      ix.s_cold[u][t] =
          m.add_variable(tag("scold", id, per), VarKind::Binary, 0, 1, up.a_cold);
      ix.p[u][t] = m.add_variable(tag("p", id, per), VarKind::Continuous, 0, up.p_max);
      const auto& pts = b.points();
      for (std::size_t k = 0; k < pts.size(); ++k)
        z[u][t].push_back(m.add_variable(tag("z", id, per, static_cast<int>(k)),
                                         VarKind::Continuous, 0, 1, pts[k].y));
      for (std::size_t j = 0; j + 1 < pts.size(); ++j)
        w[u][t].push_back(m.add_variable(tag("w", id, per, static_cast<int>(j)),
                                         VarKind::Binary, 0, 1));
      AdjacencyGroup g;
      g.unit = u;
      g.period = t;
      g.weights = z[u][t];
      g.indicators = w[u][t];
      for (const auto& pt : pts) g.positions.push_back(pt.x);
      ix.group[u][t] = static_cast<int>(m.groups().size());
      m.add_group(std::move(g));
    }
  }

  // y value at a (possibly pre-horizon) 0-based period: column or constant.
  auto y_term = [&](int u, int t, double coef, std::vector<LinearTerm>& terms,
                    double& rhs) {
    if (t >= 0) terms.push_back({ix.y[u][t], coef});
    else rhs -= coef * pre_horizon_state(inst.units[u], t + 1);
  };

  for (int t = 0; t < T; ++t) {
    const int per = t + 1;
    const std::string ts = std::to_string(per);

    // Per-unit rows.
    for (int u = 0; u < U; ++u) {
      const UnitParams& up = inst.units[u];
      const std::string& id = up.id;
      const int y = ix.y[u][t];
      const auto& pts = bps[u][t].points();
      const auto& zz = z[u][t];
      const auto& ww = w[u][t];

      // p = sum X z
      std::vector<LinearTerm> pdef{{ix.p[u][t], 1.0}};
      for (std::size_t k = 0; k < zz.size(); ++k)
        if (pts[k].x != 0.0) pdef.push_back({zz[k], -pts[k].x});
      m.add_constraint(tag("pdef", id, per), std::move(pdef), Equal, 0.0);

      // sum z = y
      std::vector<LinearTerm> conv;
      for (int k : zz) conv.push_back({k, 1.0});
      conv.push_back({y, -1.0});
      m.add_constraint(tag("conv", id, per), std::move(conv), Equal, 0.0);

      if (!ww.empty()) {
        const int K = static_cast<int>(ww.size());
        for (int k = 0; k <= K; ++k) {
          std::vector<LinearTerm> adj{{zz[k], 1.0}};
          if (k > 0) adj.push_back({ww[k - 1], -1.0});
          if (k < K) adj.push_back({ww[k], -1.0});
          m.add_constraint(tag("adj", id, per, k), std::move(adj), LessEqual, 0.0);
        }
        std::vector<LinearTerm> seg;
        for (int j : ww) seg.push_back({j, 1.0});
        seg.push_back({y, -1.0});
        m.add_constraint(tag("seg", id, per), std::move(seg), Equal, 0.0);
      }

      // Generation limits.
      m.add_constraint(tag("pmin", id, per), {{ix.p[u][t], 1.0}, {y, -up.p_min}},
                       GreaterEqual, 0.0);
      m.add_constraint(tag("pmax", id, per), {{ix.p[u][t], 1.0}, {y, -up.p_max}},
                       LessEqual, 0.0);

      // Initial minimum up/down time.
      if (t < pinned_prefix(up)) {
        if (up.y_prev == 1)
          m.add_constraint(tag("initon", id, per), {{y, 1.0}}, Equal, 1.0);
        else
          m.add_constraint(tag("initoff", id, per), {{y, 1.0}}, Equal, 0.0);
      }

      // Minimum up time: sum_{i=tau}^{t} xon_i <= y_t.
      {
        std::vector<LinearTerm> row;
        for (int i = std::max(t - up.t_on + 1, 0); i <= t; ++i)
          row.push_back({ix.x_on[u][i], 1.0});
        row.push_back({y, -1.0});
        m.add_constraint(tag("minup", id, per), std::move(row), LessEqual, 0.0);
      }
      // Minimum down time: sum_{i=tau}^{t} xoff_i <= 1 - y_t.
      {
        std::vector<LinearTerm> row;
        for (int i = std::max(t - up.t_off + 1, 0); i <= t; ++i)
          row.push_back({ix.x_off[u][i], 1.0});
        row.push_back({y, 1.0});
        m.add_constraint(tag("mindown", id, per), std::move(row), LessEqual, 1.0);
      }
      // Every start is either hot or cold.
      m.add_constraint(tag("start", id, per),
                       {{ix.s_hot[u][t], 1.0}, {ix.s_cold[u][t], 1.0}, {ix.x_on[u][t], -1.0}},
                       Equal, 0.0);
      // Cold start when off during periods t - tcold - 1 .. t - 1.
      {
        std::vector<LinearTerm> row{{y, 1.0}};
        double rhs = 0.0;
        for (int i = t - up.t_cold - 1; i <= t - 1; ++i) y_term(u, i, -1.0, row, rhs);
        row.push_back({ix.s_cold[u][t], -1.0});
        m.add_constraint(tag("cold", id, per), std::move(row), LessEqual, rhs);
      }
      // Switch-on: y_t - y_{t-1} <= xon_t.
      {
        std::vector<LinearTerm> row{{y, 1.0}};
        double rhs = 0.0;
        y_term(u, t - 1, -1.0, row, rhs);
        row.push_back({ix.x_on[u][t], -1.0});
        m.add_constraint(tag("on", id, per), std::move(row), LessEqual, rhs);
      }
      // Switch-off: xoff_t = xon_t + y_{t-1} - y_t.
      {
        std::vector<LinearTerm> row{{ix.x_off[u][t], 1.0}, {ix.x_on[u][t], -1.0}};
        double rhs = 0.0;
        y_term(u, t - 1, -1.0, row, rhs);
        row.push_back({y, 1.0});
        m.add_constraint(tag("off", id, per), std::move(row), Equal, rhs);
      }
    }

    // System rows.
    std::vector<LinearTerm> load, reserve;
    for (int u = 0; u < U; ++u) {
      load.push_back({ix.p[u][t], 1.0});
      reserve.push_back({ix.y[u][t], inst.units[u].p_max});
    }
    m.add_constraint("load[" + ts + "]", std::move(load), Equal, inst.demand[t]);
    m.add_constraint("reserve[" + ts + "]", std::move(reserve), GreaterEqual,
                     inst.demand[t] + inst.reserve[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Warm start

WarmStart encode_warm_start(const UcpModel& target, const MilpModel& previous,
                            std::span<const double> previous_values) {
  const MilpModel& m = target.model;
  WarmStart ws;
  ws.values.assign(m.num_variables(), 0.0);
  auto copy = [&](int j) {
    int pj = previous.index_of(m.variables()[j].name);
    if (pj < 0)
      throw Error("warm start: previous model lacks '" + m.variables()[j].name + "'");
    ws.values[j] = previous_values[pj];
  };
  const auto& ix = target.index;
  for (std::size_t u = 0; u < ix.y.size(); ++u) {
    for (std::size_t t = 0; t < ix.y[u].size(); ++t) {
      for (int j : {ix.y[u][t], ix.x_on[u][t], ix.x_off[u][t], ix.s_hot[u][t],
                    ix.s_cold[u][t], ix.p[u][t]})
        copy(j);
      for (int j : {ix.y[u][t], ix.x_on[u][t], ix.x_off[u][t], ix.s_hot[u][t],
                    ix.s_cold[u][t]})
        ws.values[j] = std::round(ws.values[j]);
      const double on = ws.values[ix.y[u][t]];
      const AdjacencyGroup& g = m.groups()[ix.group[u][t]];
      if (on < 0.5) {
        ws.values[ix.p[u][t]] = 0.0;
        continue;
      }
      const auto& xs = g.positions;
      double p = std::clamp(ws.values[ix.p[u][t]], xs.front(), xs.back());
      ws.values[ix.p[u][t]] = p;
      if (g.indicators.empty()) {
        ws.values[g.weights[0]] = 1.0;
        continue;
      }
      // Segment [xs[s], xs[s+1]] holding p.
      std::size_t s = static_cast<std::size_t>(
          std::upper_bound(xs.begin(), xs.end(), p) - xs.begin());
      s = s == 0 ? 0 : s - 1;
      s = std::min(s, g.indicators.size() - 1);
      const double lam = (xs[s + 1] - p) / (xs[s + 1] - xs[s]);
      ws.values[g.weights[s]] = lam;
      ws.values[g.weights[s + 1]] = 1.0 - lam;
      ws.values[g.indicators[s]] = 1.0;
      // Keep pdef exact: p is the combination of the new weights.
      ws.values[ix.p[u][t]] = lam * xs[s] + (1.0 - lam) * xs[s + 1];
    }
  }
  auto viol = m.check(ws.values, 1e-6);
  if (!viol.empty())
    throw Error("warm start infeasible at '" + viol.front().what + "' by " +
                format_real(viol.front().amount));
  return ws;
}

// ---------------------------------------------------------------------------
// MPS

std::string export_mps(const MilpModel& model) {
  std::string out;
  out += "NAME valveuc\nROWS\n N  obj\n";
  for (const auto& c : model.constraints()) {
    char s = c.sense == Sense::LessEqual ? 'L' : c.sense == Sense::Equal ? 'E' : 'G';
    out += ' ';
    out += s;
    out += "  " + c.name + "\n";
  }
  // Column-wise coefficient lists in row order.
  const auto& vars = model.variables();
  std::vector<std::vector<std::pair<int, double>>> cols(vars.size());
  for (std::size_t i = 0; i < model.constraints().size(); ++i)
    for (const auto& t : model.constraints()[i].terms)
      cols[t.var].push_back({static_cast<int>(i), t.coef});

  out += "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const bool is_int = vars[j].kind == VarKind::Binary;
    if (is_int != in_int) {
      out += "    MARKER" + std::to_string(marker++) + " 'MARKER' " +
             (is_int ? "'INTORG'\n" : "'INTEND'\n");
      in_int = is_int;
    }
    const std::string& name = vars[j].name;
    bool wrote = false;
    if (model.objective()[j] != 0.0) {
      out += "    " + name + " obj " + format_real(model.objective()[j]) + "\n";
      wrote = true;
    }
    for (auto [row, coef] : cols[j]) {
      out += "    " + name + " " + model.constraints()[row].name + " " +
             format_real(coef) + "\n";
      wrote = true;
    }
    if (!wrote) out += "    " + name + " obj 0\n";
  }
  if (in_int) out += "    MARKER" + std::to_string(marker++) + " 'MARKER' 'INTEND'\n";

  out += "RHS\n";
  for (const auto& c : model.constraints())
    if (c.rhs != 0.0) out += "    rhs " + c.name + " " + format_real(c.rhs) + "\n";

  out += "BOUNDS\n";
  for (const auto& v : vars) {
    if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) {
      out += " BV bnd " + v.name + "\n";
      continue;
    }
    if (v.lower == v.upper) {
      out += " FX bnd " + v.name + " " + format_real(v.lower) + "\n";
      continue;
    }
    if (v.lower == -kInf && v.upper == kInf) {
      out += " FR bnd " + v.name + "\n";
      continue;
    }
    if (v.lower == -kInf) out += " MI bnd " + v.name + "\n";
    else if (v.lower != 0.0) out += " LO bnd " + v.name + " " + format_real(v.lower) + "\n";
    if (v.upper != kInf) out += " UP bnd " + v.name + " " + format_real(v.upper) + "\n";
  }
  out += "ENDATA\n";
  return out;
}

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line = 0;

  bool next(std::string_view& out) {
    if (pos > text.size()) return false;
    std::size_t nl = text.find('\n', pos);
    out = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line;
    return true;
  }
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_num(std::string_view s, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad number '" + std::string(s) + "'", line, 1);
  return v;
}

}  // namespace

MilpModel parse_mps(std::string_view text) {
  enum class Section { None, Rows, Columns, Rhs, Bounds, Done };
  Section sec = Section::None;
  LineReader rd{text};
  std::string_view line;

  std::string objective_row;
  std::vector<std::string> row_names;
  std::vector<Sense> row_sense;
  std::map<std::string, int, std::less<>> row_index;
  struct Col {
    std::string name;
    bool integer = false;
    double obj = 0.0;
    std::vector<std::pair<int, double>> coefs;
    double lo = 0.0, hi = kInf;
    bool bounded_hi = false;
  };
  std::vector<Col> cols;
  std::map<std::string, int, std::less<>> col_index;
  std::vector<double> rhs;
  bool in_int = false;

  while (rd.next(line)) {
    if (line.empty() || line[0] == '*') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const bool header = line[0] != ' ' && line[0] != '\t';
    if (header) {
      if (tok[0] == "NAME") continue;
      if (tok[0] == "ROWS") sec = Section::Rows;
      else if (tok[0] == "COLUMNS") sec = Section::Columns;
      else if (tok[0] == "RHS") sec = Section::Rhs;
      else if (tok[0] == "BOUNDS") sec = Section::Bounds;
      else if (tok[0] == "ENDATA") { sec = Section::Done; break; }
      else throw ParseError("unsupported MPS section '" + std::string(tok[0]) + "'", rd.line, 1);
      continue;
    }
    switch (sec) {
      case Section::Rows: {
        if (tok.size() != 2) throw ParseError("bad ROWS entry", rd.line, 1);
        if (tok[0] == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          continue;
        }
        Sense s = tok[0] == "L" ? Sense::LessEqual
                  : tok[0] == "E" ? Sense::Equal
                  : tok[0] == "G" ? Sense::GreaterEqual
                  : throw ParseError("bad row type '" + std::string(tok[0]) + "'", rd.line, 1);
        row_index.emplace(std::string(tok[1]), static_cast<int>(row_names.size()));
        row_names.emplace_back(tok[1]);
        row_sense.push_back(s);
        rhs.push_back(0.0);
        break;
      }
      case Section::Columns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") in_int = true;
          else if (tok[2] == "'INTEND'") in_int = false;
          else throw ParseError("bad MARKER", rd.line, 1);
          continue;
        }
        if (tok.size() != 3 && tok.size() != 5)
          throw ParseError("bad COLUMNS entry", rd.line, 1);
        auto it = col_index.find(tok[0]);
        int c;
        if (it == col_index.end()) {
          c = static_cast<int>(cols.size());
          col_index.emplace(std::string(tok[0]), c);
          cols.push_back({std::string(tok[0]), in_int});
        } else {
          c = it->second;
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          double v = parse_num(tok[k + 1], rd.line);
          if (tok[k] == objective_row) { cols[c].obj = v; continue; }
          auto r = row_index.find(tok[k]);
          if (r == row_index.end())
            throw ParseError("unknown row '" + std::string(tok[k]) + "'", rd.line, 1);
          cols[c].coefs.push_back({r->second, v});
        }
        break;
      }
      case Section::Rhs: {
        if (tok.size() != 3 && tok.size() != 5) throw ParseError("bad RHS entry", rd.line, 1);
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          auto r = row_index.find(tok[k]);
          if (r == row_index.end())
            throw ParseError("unknown row '" + std::string(tok[k]) + "'", rd.line, 1);
          rhs[r->second] = parse_num(tok[k + 1], rd.line);
        }
        break;
      }
      case Section::Bounds: {
        if (tok.size() < 3) throw ParseError("bad BOUNDS entry", rd.line, 1);
        auto it = col_index.find(tok[2]);
        if (it == col_index.end())
          throw ParseError("unknown column '" + std::string(tok[2]) + "'", rd.line, 1);
        Col& c = cols[it->second];
        std::string_view type = tok[0];
        auto val = [&] {
          if (tok.size() != 4) throw ParseError("missing bound value", rd.line, 1);
          return parse_num(tok[3], rd.line);
        };
        if (type == "UP") { c.hi = val(); c.bounded_hi = true; }
        else if (type == "LO") c.lo = val();
        else if (type == "FX") { c.lo = c.hi = val(); c.bounded_hi = true; }
        else if (type == "FR") { c.lo = -kInf; c.hi = kInf; }
        else if (type == "MI") c.lo = -kInf;
        else if (type == "PL") c.hi = kInf;
        else if (type == "BV") { c.lo = 0; c.hi = 1; c.bounded_hi = true; c.integer = true; }
        else throw ParseError("unsupported bound type '" + std::string(type) + "'", rd.line, 1);
        break;
      }
      default:
        throw ParseError("data outside a section", rd.line, 1);
    }
  }
  if (sec != Section::Done) throw ParseError("missing ENDATA", rd.line, 1);

  MilpModel m;
  for (auto& c : cols) {
    VarKind kind = VarKind::Continuous;
    if (c.integer) {
      if (!c.bounded_hi) c.hi = 1.0;
      if (c.lo < 0.0 || c.hi > 1.0)
        throw ParseError("general integer column '" + c.name + "' is not supported", rd.line, 1);
      kind = VarKind::Binary;
    }
    m.add_variable(c.name, kind, c.lo, c.hi, c.obj);
  }
  std::vector<std::vector<LinearTerm>> rows(row_names.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto [r, v] : cols[j].coefs) rows[r].push_back({static_cast<int>(j), v});
  for (std::size_t i = 0; i < row_names.size(); ++i)
    m.add_constraint(row_names[i], std::move(rows[i]), row_sense[i], rhs[i]);
  return m;
}

SolutionFile parse_solution(std::string_view text, const MilpModel& model) {
  SolutionFile sol;
  sol.values.assign(model.num_variables(), 0.0);
  std::vector<char> seen(model.num_variables(), 0);
  LineReader rd{text};
  std::string_view line;
  while (rd.next(line)) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto tok = split_ws(line.substr(hash + 1));
      if (tok.size() == 2 && tok[0] == "bound") {
        sol.bound = parse_num(tok[1], rd.line);
        sol.has_bound = true;
      }
      line = line.substr(0, hash);
    }
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2)
      throw ParseError("expected '<variable> <value>'", rd.line, 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), v);
    if (ec != std::errc() || ptr != tok[1].data() + tok[1].size() || !std::isfinite(v))
      throw ParseError("bad value '" + std::string(tok[1]) + "'", rd.line,
                       static_cast<int>(tok[1].data() - line.data()) + 1);
    int j = model.index_of(tok[0]);
    if (j < 0) {
      sol.unknown.emplace_back(tok[0]);
      continue;
    }
    sol.values[j] = v;
    seen[j] = 1;
  }
  sol.missing = static_cast<int>(std::count(seen.begin(), seen.end(), 0));
  return sol;
}

std::string format_solution(const MilpModel& model, std::span<const double> values) {
  std::string out;
  for (std::size_t j = 0; j < model.num_variables(); ++j)
    out += model.variables()[j].name + " " + format_g17(values[j]) + "\n";
  return out;
}

}  // namespace valveuc
