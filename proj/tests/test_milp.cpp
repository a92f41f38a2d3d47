#include <doctest.h>

#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"
#include "milp.hpp"
#include "mip.hpp"

using namespace valveuc;

namespace {

Instance load_fixture(const char* name) {
  std::ifstream f(std::string(VALVEUC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

BreakpointGrid initial_grid(const Instance& inst) {
  BreakpointGrid g;
  for (const auto& u : inst.units) g.emplace_back(inst.periods, initial_breakpoints(u));
  return g;
}

// Unit with valve points at 50, 100, 150, 200: four breakpoints.
UnitParams four_point_unit(const std::string& id) {
  UnitParams u;
  u.id = id;
  u.a = 100;
  u.b = 10;
  u.c = 0.0001;
  u.e = 50;
  u.f = std::numbers::pi / 50;
  u.p_min = 50;
  u.p_max = 200;
  u.t_on = 1;
  u.t_off = 1;
  u.a_hot = 10;
  u.a_cold = 20;
  u.t_cold = 1;
  return u;
}

std::map<std::string, int> rows_by_kind(const MilpModel& m) {
  std::map<std::string, int> n;
  for (const auto& c : m.constraints()) ++n[c.name.substr(0, c.name.find('['))];
  return n;
}

void set(const MilpModel& m, std::vector<double>& x, const std::string& name, double v) {
  const int j = m.index_of(name);
  REQUIRE_MESSAGE(j >= 0, name);
  x[j] = v;
}

}  // namespace

TEST_CASE("milp: variable and row ledger, five units one period") {
  Instance inst;
  inst.periods = 1;
  inst.demand = {400};
  inst.reserve = {40};
  for (int i = 0; i < 5; ++i) inst.units.push_back(four_point_unit("g" + std::to_string(i)));
  inst.units[0].t_on = 3;  // pinned on in period 1
  inst.units[1].y_prev = 0;
  inst.units[1].t_off = 4;  // pinned off
  auto grid = initial_grid(inst);
  REQUIRE(grid[0][0].size() == 4);
  UcpModel ucp = build_model(inst, grid);
  // Per unit: y, xon, xoff, shot, scold, p, 4 weights, 3 indicators.
  CHECK(ucp.model.num_variables() == 65);
  int binaries = 0;
  for (const auto& v : ucp.model.variables()) binaries += v.kind == VarKind::Binary;
  CHECK(binaries == 5 * 8);

  // Hand count per unit: pdef, conv, 4 adjacency rows, seg, pmin, pmax,
  // minup, mindown, start, cold, on, off; plus load and reserve.
  auto n = rows_by_kind(ucp.model);
  CHECK(n["pdef"] == 5);
  CHECK(n["conv"] == 5);
  CHECK(n["adj"] == 20);
  CHECK(n["seg"] == 5);
  CHECK(n["pmin"] == 5);
  CHECK(n["pmax"] == 5);
  CHECK(n["minup"] == 5);
  CHECK(n["mindown"] == 5);
  CHECK(n["start"] == 5);
  CHECK(n["cold"] == 5);
  CHECK(n["on"] == 5);
  CHECK(n["off"] == 5);
  CHECK(n["initon"] == 1);
  CHECK(n["initoff"] == 1);
  CHECK(n["load"] == 1);
  CHECK(n["reserve"] == 1);
  CHECK(ucp.model.num_constraints() == 5 * 15 + 2 + 2);
  CHECK(ucp.model.groups().size() == 5);
}

TEST_CASE("milp: row ledger over a longer horizon") {
  Instance inst = with_periods(load_fixture("ucp10.inst"), 6);
  auto grid = initial_grid(inst);
  UcpModel ucp = build_model(inst, grid);
  auto n = rows_by_kind(ucp.model);
  long pinned = 0, adj = 0, vars = 0;
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    pinned += std::min(pinned_prefix(inst.units[u]), inst.periods);
    adj += static_cast<long>(grid[u][0].size()) * inst.periods;
    vars += (6 + 2 * static_cast<long>(grid[u][0].size()) - 1) * inst.periods;
  }
  const long UT = static_cast<long>(inst.units.size()) * inst.periods;
  for (const char* k : {"pdef", "conv", "seg", "pmin", "pmax", "minup", "mindown", "start", "cold",
                        "on", "off"})
    CHECK(n[k] == UT);
  CHECK(n["adj"] == adj);
  CHECK(n["initon"] + n["initoff"] == pinned);
  CHECK(n["load"] == inst.periods);
  CHECK(n["reserve"] == inst.periods);
  CHECK(static_cast<long>(ucp.model.num_variables()) == vars);
}

TEST_CASE("milp: build errors") {
  Instance inst = load_fixture("ucp5.inst");
  auto grid = initial_grid(inst);
  grid.pop_back();
  CHECK_THROWS_AS(build_model(inst, grid), Error);
  grid = initial_grid(inst);
  grid[0].pop_back();
  CHECK_THROWS_AS(build_model(inst, grid), Error);
}

TEST_CASE("milp: dispatch instance pins every unit on") {
  Instance inst = load_fixture("ucp10.inst");
  Instance eld = eld_to_ucp(inst.units, 1000);
  UcpModel ucp = build_model(eld, initial_grid(eld));
  auto n = rows_by_kind(ucp.model);
  CHECK(n["initon"] == static_cast<int>(eld.units.size()));
  auto r = solve_mip(ucp.model, {});
  REQUIRE(r.has_incumbent);
  for (std::size_t u = 0; u < eld.units.size(); ++u) CHECK(r.incumbent[ucp.index.y[u][0]] == 1.0);
}

TEST_CASE("milp: reserve row slack for pinned units") {
  Instance inst;
  inst.periods = 1;
  inst.units = {four_point_unit("a"), four_point_unit("b")};
  inst.demand = {250};
  for (double R : {100.0, 150.0, 151.0}) {
    inst.reserve = {R};
    Instance eld = inst;
    for (auto& u : eld.units) u.t_on = 2;
    UcpModel ucp = build_model(eld, initial_grid(eld));
    auto r = solve_mip(ucp.model, {});
    CHECK((r.status != MipStatus::Infeasible) == (400 >= 250 + R));
  }
}

TEST_CASE("milp: large minimum up time fixes the first period") {
  Instance inst;
  inst.periods = 2;
  inst.demand = {0, 0};
  inst.reserve = {0, 0};
  UnitParams u = four_point_unit("a");
  u.t_on = 5;
  u.t_prev = 1;
  inst.units = {u};
  UcpModel ucp = build_model(inst, initial_grid(inst));
  bool found = false;
  for (const auto& c : ucp.model.constraints())
    if (c.name == "initon[a,1]") {
      found = true;
      CHECK(c.sense == Sense::Equal);
      CHECK(c.rhs == 1.0);
    }
  CHECK(found);
  // Zero demand is unreachable with the unit held on.
  CHECK(solve_mip(ucp.model, {}).status == MipStatus::Infeasible);
}

TEST_CASE("milp: at most two adjacent weights in integral solutions") {
  Instance inst;
  inst.periods = 1;
  inst.demand = {120};
  inst.reserve = {0};
  inst.units = {four_point_unit("a")};
  inst.units[0].t_on = 2;
  UcpModel ucp = build_model(inst, initial_grid(inst));
  const MilpModel& m = ucp.model;
  const AdjacencyGroup& g = m.groups()[0];
  // For each indicator choice, every split of mass between two weights
  // is accepted only when the weights bracket the chosen segment.
  for (std::size_t s = 0; s < g.indicators.size(); ++s)
    for (std::size_t a = 0; a < g.weights.size(); ++a)
      for (std::size_t b = a + 1; b < g.weights.size(); ++b) {
        std::vector<double> x(m.num_variables(), 0.0);
        x[ucp.index.y[0][0]] = 1;
        x[g.indicators[s]] = 1;
        x[g.weights[a]] = 0.5;
        x[g.weights[b]] = 0.5;
        const double p = 0.5 * (g.positions[a] + g.positions[b]);
        x[ucp.index.p[0][0]] = p;
        // Relax demand: only structural rows matter here.
        bool structural_ok = true;
        for (const auto& v : m.check(x))
          if (v.what.rfind("load", 0) != 0) structural_ok = false;
        CHECK(structural_ok == (a == s && b == s + 1));
        if (structural_ok) CHECK(m.adjacency_holds(x));
      }
}

TEST_CASE("milp: decommitted units produce nothing") {
  Instance inst = with_periods(load_fixture("ucp5.inst"), 1);
  UcpModel ucp = build_model(inst, initial_grid(inst));
  auto r = solve_mip(ucp.model, {});
  REQUIRE(r.has_incumbent);
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    if (r.incumbent[ucp.index.y[u][0]] > 0.5) continue;
    CHECK(r.incumbent[ucp.index.p[u][0]] == doctest::Approx(0.0));
    for (int k : ucp.model.groups()[ucp.index.group[u][0]].weights)
      CHECK(r.incumbent[k] == doctest::Approx(0.0));
  }
  // Output without commitment breaks the limits row.
  std::vector<double> x = r.incumbent;
  for (std::size_t u = 0; u < inst.units.size(); ++u)
    if (x[ucp.index.y[u][0]] < 0.5) {
      x[ucp.index.p[u][0]] = inst.units[u].p_min;
      CHECK_FALSE(ucp.model.feasible(x));
      break;
    }
}

TEST_CASE("milp: warm start onto identical breakpoints is the identity") {
  Instance inst = with_periods(load_fixture("ucp5.inst"), 2);
  auto grid = initial_grid(inst);
  UcpModel a = build_model(inst, grid);
  auto r = solve_mip(a.model, {});
  REQUIRE(r.has_incumbent);
  UcpModel b = build_model(inst, grid);
  WarmStart ws = encode_warm_start(b, a.model, r.incumbent);
  REQUIRE(ws.values.size() == r.incumbent.size());
  for (std::size_t j = 0; j < ws.values.size(); ++j)
    CHECK(ws.values[j] == doctest::Approx(r.incumbent[j]).epsilon(1e-9));
}

TEST_CASE("milp: warm start rescales weights onto the split segment") {
  Instance inst;
  inst.periods = 1;
  inst.reserve = {0};
  inst.units = {four_point_unit("a")};
  inst.units[0].t_on = 2;
  const double p = 50 + 50.0 / 4;  // quarter point of [50, 100]
  inst.demand = {p};
  auto grid = initial_grid(inst);
  UcpModel before = build_model(inst, grid);
  std::vector<double> x(before.model.num_variables(), 0.0);
  set(before.model, x, "y[a,1]", 1);
  set(before.model, x, "p[a,1]", p);
  set(before.model, x, "z[a,1,0]", 0.75);
  set(before.model, x, "z[a,1,1]", 0.25);
  set(before.model, x, "w[a,1,0]", 1);
  REQUIRE(before.model.feasible(x));

  grid[0][0] = refine_breakpoints(grid[0][0], p, 2);  // adds 75
  UcpModel after = build_model(inst, grid);
  WarmStart ws = encode_warm_start(after, before.model, x);
  const MilpModel& m = after.model;
  CHECK(ws.values[m.index_of("z[a,1,0]")] == doctest::Approx(0.5));
  CHECK(ws.values[m.index_of("z[a,1,1]")] == doctest::Approx(0.5));
  CHECK(ws.values[m.index_of("z[a,1,2]")] == 0.0);
  CHECK(ws.values[m.index_of("w[a,1,0]")] == 1.0);
  CHECK(ws.values[m.index_of("p[a,1]")] == doctest::Approx(p));
  CHECK(m.feasible(ws.values));
}

TEST_CASE("milp: warm start survives random refinement sequences") {
  std::mt19937_64 rng(31);
  Instance inst = with_periods(load_fixture("ucp10.inst"), 2);
  auto grid = initial_grid(inst);
  UcpModel cur = build_model(inst, grid);
  auto r = solve_mip(cur.model, {1e-3, 60});
  REQUIRE(r.has_incumbent);
  std::vector<double> x = r.incumbent;
  for (int step = 0; step < 8; ++step) {
    for (std::size_t u = 0; u < inst.units.size(); ++u)
      for (int t = 0; t < inst.periods; ++t) {
        const auto& up = inst.units[u];
        std::uniform_real_distribution<double> P(up.p_min, up.p_max);
        if (rng() % 2) grid[u][t] = refine_breakpoints(grid[u][t], P(rng), 2 << (rng() % 3));
        // Refining at the dispatched output splits the segment holding it.
        if (x[cur.index.y[u][t]] > 0.5 && rng() % 2)
          grid[u][t] = refine_breakpoints(grid[u][t], x[cur.index.p[u][t]], 2 << (rng() % 3));
      }
    UcpModel next = build_model(inst, grid);
    WarmStart ws = encode_warm_start(next, cur.model, x);
    CHECK(next.model.feasible(ws.values, 1e-6));
    CHECK(next.model.adjacency_holds(ws.values));
    // The envelope only rises, so the mapped start costs at least as much.
    CHECK(next.model.objective_value(ws.values) >=
          cur.model.objective_value(x) - 1e-7 * std::abs(cur.model.objective_value(x)));
    x = ws.values;
    cur = std::move(next);
  }
}

TEST_CASE("milp: MPS round trip") {
  Instance inst = with_periods(load_fixture("ucp5.inst"), 3);
  auto grid = initial_grid(inst);
  grid[0][1] = refine_breakpoints(grid[0][1], 300, 4);
  UcpModel ucp = build_model(inst, grid);
  const std::string text = export_mps(ucp.model);
  MilpModel back = parse_mps(text);
  CHECK(export_mps(back) == text);
  REQUIRE(back.num_variables() == ucp.model.num_variables());
  REQUIRE(back.num_constraints() == ucp.model.num_constraints());
  for (std::size_t j = 0; j < back.num_variables(); ++j) {
    const auto& a = ucp.model.variables()[j];
    const auto& b = back.variables()[j];
    CHECK(a.name == b.name);
    CHECK(a.kind == b.kind);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(ucp.model.objective()[j] == back.objective()[j]);
  }
  for (std::size_t i = 0; i < back.num_constraints(); ++i) {
    const auto& a = ucp.model.constraints()[i];
    const auto& b = back.constraints()[i];
    CHECK(a.name == b.name);
    CHECK(a.sense == b.sense);
    CHECK(a.rhs == b.rhs);
    std::map<int, double> ca, cb;
    for (auto t : a.terms) ca[t.var] += t.coef;
    for (auto t : b.terms) cb[t.var] += t.coef;
    CHECK(ca == cb);
  }
  CHECK(text.find("MARKER") != std::string::npos);
}

TEST_CASE("milp: one-variable MPS") {
  MilpModel m;
  int x = m.add_variable("x", VarKind::Continuous, 0, 10, 1);
  m.add_constraint("c", {{x, 1}}, Sense::GreaterEqual, 1);
  MilpModel back = parse_mps(export_mps(m));
  auto r = solve_mip(back, {});
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1));
  CHECK_THROWS_AS(parse_mps("NAME x\nROWS\n N obj\nCOLUMNS\n x obj\n"), ParseError);
}

TEST_CASE("milp: solution files") {
  MilpModel m;
  m.add_variable("x", VarKind::Continuous, 0, 10, 1);
  m.add_variable("b", VarKind::Binary, 0, 1, 1);
  auto s = parse_solution("# bound 0.5\nx 2.5\nghost 1\nb 1\n", m);
  CHECK(s.has_bound);
  CHECK(s.bound == 0.5);
  CHECK(s.missing == 0);
  CHECK(s.unknown == std::vector<std::string>{"ghost"});
  CHECK(s.values == std::vector<double>{2.5, 1});
  auto t = parse_solution("x 1\n", m);
  CHECK(t.missing == 1);
  CHECK_THROWS_AS(parse_solution("x one\n", m), ParseError);
  auto u = parse_solution(format_solution(m, std::vector<double>{0.1, 0}), m);
  CHECK(u.values == std::vector<double>{0.1, 0});
}
