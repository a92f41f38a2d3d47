#include "external.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "error.hpp"
#include "numfmt.hpp"

namespace valveuc {

namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "valveuc-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw IoError("cannot create a temporary directory");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
}

}  // namespace

MipOutcome solve_external(const MilpModel& model, const std::string& command,
                          const MipLimits& limits, const WarmStart* start) {
  if (command.find("{mps}") == std::string::npos || command.find("{sol}") == std::string::npos)
    throw ExternalSolverError("solver command must contain {mps} and {sol}");
  const auto t0 = std::chrono::steady_clock::now();
  TempDir dir;
  const fs::path mps = dir.path() / "model.mps";
  const fs::path sol = dir.path() / "model.sol";
  {
    std::ofstream f(mps);
    f << export_mps(model);
    if (!f) throw IoError("cannot write " + mps.string());
  }
  if (start && start->values.size() == model.num_variables()) {
    std::ofstream f(dir.path() / "start.sol");
    f << format_solution(model, start->values);
  }

  std::string cmd = command;
  replace_all(cmd, "{mps}", quote(mps.string()));
  replace_all(cmd, "{sol}", quote(sol.string()));
  replace_all(cmd, "{gap}", format_g17(limits.gap));
  replace_all(cmd, "{time}", std::isfinite(limits.time_seconds) ? format_g17(limits.time_seconds) : "inf");
  std::fflush(nullptr);
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0)
    throw ExternalSolverError("external solver failed (status " +
                              std::to_string(WIFEXITED(rc) ? WEXITSTATUS(rc) : rc) + ")");

  std::ifstream in(sol);
  if (!in) throw ExternalSolverError("external solver wrote no solution file");
  std::stringstream buf;
  buf << in.rdbuf();
  SolutionFile parsed;
  try {
    parsed = parse_solution(buf.str(), model);
  } catch (const ParseError& e) {
    throw ExternalSolverError(std::string("unreadable external solution: ") + e.what());
  }
  for (const auto& name : parsed.unknown)
    std::cerr << "warning: external solution names unknown variable '" << name << "'\n";
  if (parsed.missing > 0)
    throw ExternalSolverError("external solution omits " + std::to_string(parsed.missing) +
                              " model variables");

  const auto violations = model.check(parsed.values, 1e-6);
  if (!violations.empty())
    throw ExternalSolverError("external solver disagreement: '" + violations.front().what +
                              "' violated by " + format_real(violations.front().amount));
  if (!model.adjacency_holds(parsed.values))
    throw ExternalSolverError("external solver disagreement: adjacency violated");

  MipOutcome out;
  out.has_incumbent = true;
  out.incumbent = std::move(parsed.values);
  out.objective = model.objective_value(out.incumbent);
  // Without a reported bound the solver is taken to have met the requested gap.
  const double floor = 1e-9 * std::max(1.0, std::abs(out.objective));
  const double assumed = out.objective - std::max(limits.gap * std::abs(out.objective), 0.0);
  out.best_bound = parsed.has_bound ? std::min(parsed.bound, out.objective) : assumed;
  out.status = out.objective - out.best_bound <= floor ? MipStatus::Optimal : MipStatus::GapLimit;
  out.nodes = 0;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace valveuc
