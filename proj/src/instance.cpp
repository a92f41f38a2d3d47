#include "instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>

#include "cost.hpp"
#include "error.hpp"
#include "numfmt.hpp"

namespace valveuc {

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

double to_real(std::string_view s, int line, int col) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a real number, got '" + std::string(s) + "'",
                     line, col);
  if (!std::isfinite(v))
    throw ParseError("non-finite number '" + std::string(s) + "'", line, col);
  return v;
}

int to_int(std::string_view s, int line, int col) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line,
                     col);
  return v;
}

constexpr const char* kUnitFields[] = {
    "id",   "a",   "b",    "c",    "e",     "f",     "pmin", "pmax",
    "ton", "toff", "ahot", "acold", "tcold", "yprev", "tprev"};

UnitParams parse_unit_record(const std::vector<Token>& toks, int line) {
  UnitParams u;
  std::set<std::string_view> seen;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const Token& t = toks[i];
    auto eq = t.text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == t.text.size())
      throw ParseError("expected field=value, got '" + std::string(t.text) + "'",
                       line, t.column);
    std::string_view key = t.text.substr(0, eq);
    std::string_view val = t.text.substr(eq + 1);
    int vcol = t.column + static_cast<int>(eq) + 1;
    if (std::find(std::begin(kUnitFields), std::end(kUnitFields), key) ==
        std::end(kUnitFields))
      throw ParseError("unknown unit field '" + std::string(key) + "'", line,
                       t.column);
    if (!seen.insert(key).second)
      throw ParseError("duplicate unit field '" + std::string(key) + "'", line,
                       t.column);
    if (key == "id") u.id = std::string(val);
    else if (key == "a") u.a = to_real(val, line, vcol);
    else if (key == "b") u.b = to_real(val, line, vcol);
    else if (key == "c") u.c = to_real(val, line, vcol);
    else if (key == "e") u.e = to_real(val, line, vcol);
    else if (key == "f") u.f = to_real(val, line, vcol);
    else if (key == "pmin") u.p_min = to_real(val, line, vcol);
    else if (key == "pmax") u.p_max = to_real(val, line, vcol);
    else if (key == "ton") u.t_on = to_int(val, line, vcol);
    else if (key == "toff") u.t_off = to_int(val, line, vcol);
    else if (key == "ahot") u.a_hot = to_real(val, line, vcol);
    else if (key == "acold") u.a_cold = to_real(val, line, vcol);
    else if (key == "tcold") u.t_cold = to_int(val, line, vcol);
    else if (key == "yprev") u.y_prev = to_int(val, line, vcol);
    else if (key == "tprev") u.t_prev = to_int(val, line, vcol);
  }
  for (const char* f : kUnitFields)
    if (!seen.contains(f))
      throw ParseError(std::string("missing unit field '") + f + "'", line,
                       toks.front().column);
  return u;
}

struct Document {
  std::optional<int> periods;
  std::optional<std::vector<double>> demand;
  std::optional<std::vector<double>> reserve;
  int header_line = 0;
  std::vector<UnitParams> units;
};

Document parse_document(std::string_view text, bool allow_header) {
  Document doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                      : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    auto toks = tokenize(line);
    if (toks.empty()) continue;
    std::string_view kw = toks[0].text;

    if (kw == "unit") {
      if (allow_header && !doc.reserve)
        throw ParseError("unit record before the periods/demand/reserve header",
                         line_no, toks[0].column);
      doc.units.push_back(parse_unit_record(toks, line_no));
      continue;
    }
    if (!allow_header)
      throw ParseError("expected 'unit', got '" + std::string(kw) + "'",
                       line_no, toks[0].column);
    if (kw == "periods") {
      if (doc.periods)
        throw ParseError("duplicate 'periods'", line_no, toks[0].column);
      if (toks.size() != 2)
        throw ParseError(toks.size() < 2 ? "missing value for 'periods'"
                                         : "trailing tokens after 'periods'",
                         line_no,
                         toks.size() < 2 ? toks[0].column : toks[2].column);
      doc.periods = to_int(toks[1].text, line_no, toks[1].column);
      doc.header_line = line_no;
    } else if (kw == "demand" || kw == "reserve") {
      if (!doc.periods)
        throw ParseError("'" + std::string(kw) + "' before 'periods'", line_no,
                         toks[0].column);
      if (kw == "reserve" && !doc.demand)
        throw ParseError("'reserve' before 'demand'", line_no, toks[0].column);
      auto& slot = kw == "demand" ? doc.demand : doc.reserve;
      if (slot)
        throw ParseError("duplicate '" + std::string(kw) + "'", line_no,
                         toks[0].column);
      std::vector<double> vals;
      for (std::size_t i = 1; i < toks.size(); ++i)
        vals.push_back(to_real(toks[i].text, line_no, toks[i].column));
      if (static_cast<int>(vals.size()) != *doc.periods)
        throw ParseError("'" + std::string(kw) + "' has " +
                             std::to_string(vals.size()) +
                             " values but periods is " +
                             std::to_string(*doc.periods),
                         line_no, toks[0].column);
      slot = std::move(vals);
    } else {
      throw ParseError("unknown keyword '" + std::string(kw) + "'", line_no,
                       toks[0].column);
    }
  }
  return doc;
}

void append_unit(std::string& out, const UnitParams& u) {
  out += "unit id=" + u.id;
  out += " a=" + format_real(u.a);
  out += " b=" + format_real(u.b);
  out += " c=" + format_real(u.c);
  out += " e=" + format_real(u.e);
  out += " f=" + format_real(u.f);
  out += " pmin=" + format_real(u.p_min);
  out += " pmax=" + format_real(u.p_max);
  out += " ton=" + std::to_string(u.t_on);
  out += " toff=" + std::to_string(u.t_off);
  out += " ahot=" + format_real(u.a_hot);
  out += " acold=" + format_real(u.a_cold);
  out += " tcold=" + std::to_string(u.t_cold);
  out += " yprev=" + std::to_string(u.y_prev);
  out += " tprev=" + std::to_string(u.t_prev);
  out += '\n';
}

}  // namespace

bool ValidationReport::has_error(std::string_view code) const {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

bool ValidationReport::has_warning(std::string_view code) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

Instance parse_instance(std::string_view text) {
  Document doc = parse_document(text, true);
  if (!doc.periods) throw ParseError("missing 'periods'", 1, 1);
  if (!doc.demand) throw ParseError("missing 'demand'", doc.header_line, 1);
  if (!doc.reserve) throw ParseError("missing 'reserve'", doc.header_line, 1);
  Instance inst;
  inst.periods = *doc.periods;
  inst.demand = std::move(*doc.demand);
  inst.reserve = std::move(*doc.reserve);
  inst.units = std::move(doc.units);
  return inst;
}

std::vector<UnitParams> parse_units(std::string_view text) {
  return parse_document(text, false).units;
}

std::string format_units(const std::vector<UnitParams>& units) {
  std::string out;
  for (const auto& u : units) append_unit(out, u);
  return out;
}

std::string format_instance(const Instance& inst) {
  std::string out = "periods " + std::to_string(inst.periods) + "\ndemand";
  for (double d : inst.demand) out += " " + format_real(d);
  out += "\nreserve";
  for (double r : inst.reserve) out += " " + format_real(r);
  out += "\n";
  out += format_units(inst.units);
  return out;
}

ValidationReport validate(const Instance& inst) {
  ValidationReport rep;
  auto error = [&](std::string code, std::string msg) {
    rep.errors.push_back({std::move(code), std::move(msg)});
  };
  auto warn = [&](std::string code, std::string msg) {
    rep.warnings.push_back({std::move(code), std::move(msg)});
  };

  if (inst.periods < 1)
    error("periods", "number of periods must be positive, got " +
                         std::to_string(inst.periods));
  if (static_cast<int>(inst.demand.size()) != inst.periods ||
      static_cast<int>(inst.reserve.size()) != inst.periods)
    error("length", "demand and reserve must have one value per period");
  for (std::size_t t = 0; t < inst.demand.size(); ++t)
    if (!std::isfinite(inst.demand[t]) || inst.demand[t] < 0)
      error("demand", "demand in period " + std::to_string(t + 1) +
                          " must be finite and nonnegative");
  for (std::size_t t = 0; t < inst.reserve.size(); ++t)
    if (!std::isfinite(inst.reserve[t]) || inst.reserve[t] < 0)
      error("reserve", "reserve in period " + std::to_string(t + 1) +
                           " must be finite and nonnegative");
  if (inst.units.empty()) error("units", "instance has no units");

  std::set<std::string> ids;
  double capacity = 0.0;
  for (const auto& u : inst.units) {
    const std::string who = "unit '" + u.id + "': ";
    if (u.id.empty()) error("id", "unit with empty id");
    if (!ids.insert(u.id).second) error("id", who + "duplicate id");
    const double vals[] = {u.a, u.b, u.c, u.e, u.f, u.p_min, u.p_max,
                           u.a_hot, u.a_cold};
    if (!std::all_of(std::begin(vals), std::end(vals),
                     [](double v) { return std::isfinite(v); })) {
      error("finite", who + "parameters must be finite");
      continue;
    }
    if (u.p_min < 0) error("limits", who + "pmin must be nonnegative");
    if (u.p_min > u.p_max) error("limits", who + "pmin exceeds pmax");
    if (u.e < 0 || u.f < 0)
      error("valve", who + "valve amplitude and frequency must be nonnegative");
    if (u.t_on < 0 || u.t_off < 0 || u.t_cold < 0)
      error("times", who + "ton, toff and tcold must be nonnegative");
    if (u.y_prev != 0 && u.y_prev != 1)
      error("yprev", who + "yprev must be 0 or 1");
    if (u.t_prev < 1) error("tprev", who + "tprev must be at least 1");
    if (!concavity_holds(u))
      error("concavity",
            who + "c = " + format_real(u.c) + " exceeds e*f^2/2 = " +
                format_real(u.e * u.f * u.f / 2) +
                "; the cost is not concave between valve points");
    else if (u.e > 0 && u.c > u.e * u.f * u.f / std::numbers::pi)
      warn("chord",
           who + "c exceeds e*f^2/pi; chords between valve points may lie "
                 "above the cost curve");
    if (u.e == 0 && u.c <= 0)
      warn("degenerate", who + "no valve term and nonpositive curvature");
    if (u.a_hot > u.a_cold)
      warn("startup", who + "hot start-up cost exceeds cold start-up cost");
    capacity += u.p_max;
  }

  double peak = 0.0;
  for (std::size_t t = 0; t < inst.demand.size() && t < inst.reserve.size();
       ++t)
    peak = std::max(peak, inst.demand[t] + inst.reserve[t]);
  if (!inst.units.empty() && capacity < peak)
    warn("capacity", "total capacity " + format_real(capacity) +
                         " is below peak demand plus reserve " +
                         format_real(peak));
  return rep;
}

Instance eld_to_ucp(const std::vector<UnitParams>& units, double load) {
  if (units.empty()) throw DomainError("load dispatch needs at least one unit");
  if (!(load > 0)) throw DomainError("load must be positive");
  Instance inst;
  inst.periods = 1;
  inst.demand = {load};
  inst.reserve = {0.0};
  inst.units = units;
  for (auto& u : inst.units) {
    u.y_prev = 1;
    u.t_prev = 1;
    u.t_on = 2;  // pinned_prefix == 1: the unit stays on in period 1
  }
  return inst;
}

Instance with_periods(const Instance& inst, int periods) {
  if (periods < 1) throw DomainError("periods must be positive");
  if (inst.demand.empty() || inst.reserve.empty())
    throw DomainError("instance has an empty demand profile");
  Instance out = inst;
  out.periods = periods;
  out.demand.resize(periods);
  out.reserve.resize(periods);
  for (int t = 0; t < periods; ++t) {
    out.demand[t] = inst.demand[t % inst.demand.size()];
    out.reserve[t] = inst.reserve[t % inst.reserve.size()];
  }
  return out;
}

int pre_horizon_state(const UnitParams& u, int period) {
  return period > -u.t_prev ? u.y_prev : 1 - u.y_prev;
}

int pinned_prefix(const UnitParams& u) {
  return u.y_prev == 1 ? std::max(0, u.t_on - u.t_prev)
                       : std::max(0, u.t_off - u.t_prev);
}

}  // namespace valveuc
