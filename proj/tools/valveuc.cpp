// Command-line front end over the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "valveuc/valveuc.h"

namespace {

struct Options {
  std::string input;
  int periods = 0;
  double load = 0.0;
  double tolerance = 1e-7;
  double time_limit = 0.0;
  int k_initial = 2;
  std::string backend = "embedded";
  std::string solver_cmd;
  std::string trace_path;
  std::string solution_path;
  std::string output;
  std::string unit;
  int segments = 0;
  bool deterministic = false;
};

struct Failure {
  int code;
};

void check(vuc_status s) {
  if (s != VUC_OK) {
    std::fprintf(stderr, "error: %s\n", vuc_last_error());
    throw Failure{1};
  }
}

struct Instance {
  vuc_instance* p = nullptr;
  ~Instance() { vuc_instance_free(p); }
};

struct Text {
  char* p = nullptr;
  ~Text() { vuc_string_free(p); }
};

void load_instance(const Options& o, bool dispatch, Instance& out) {
  if (dispatch) {
    check(vuc_instance_read_dispatch(o.input.c_str(), o.load, &out.p));
    return;
  }
  check(vuc_instance_read(o.input.c_str(), &out.p));
  if (o.periods > 0) {
    Instance trimmed;
    check(vuc_instance_with_periods(out.p, o.periods, &trimmed.p));
    std::swap(out.p, trimmed.p);
  }
}

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") std::fputs(text, stdout);
  else check(vuc_write_file(path.c_str(), text));
}

int run_solve(const Options& o, bool dispatch) {
  Instance inst;
  load_instance(o, dispatch, inst);
  vuc_config cfg;
  vuc_config_default(&cfg);
  cfg.tolerance = o.tolerance;
  cfg.time_limit = o.time_limit;
  cfg.k_initial = o.k_initial;
  cfg.deterministic = o.deterministic ? 1 : 0;
  std::string cmd = o.solver_cmd;
  if (cmd.empty())
    if (const char* env = std::getenv("VALVEUC_SOLVER_CMD")) cmd = env;
  if (o.backend == "external") {
    if (cmd.empty()) {
      std::fprintf(stderr, "error: --backend external needs --solver-cmd or VALVEUC_SOLVER_CMD\n");
      return 1;
    }
    cfg.backend = VUC_BACKEND_EXTERNAL;
    cfg.solver_cmd = cmd.c_str();
  }

  vuc_result* res = nullptr;
  check(vuc_solve(inst.p, &cfg, &res));
  struct Guard {
    vuc_result* r;
    ~Guard() { vuc_result_free(r); }
  } guard{res};

  Text trace, sol;
  check(vuc_result_trace_csv(res, &trace.p));
  check(vuc_result_solution(res, &sol.p));
  if (!o.trace_path.empty()) check(vuc_write_file(o.trace_path.c_str(), trace.p));
  if (!o.solution_path.empty()) check(vuc_write_file(o.solution_path.c_str(), sol.p));

  const bool optimal = vuc_result_status(res) == VUC_SOLVE_OPTIMAL;
  std::printf("status %s\n", optimal ? "optimal_within_tolerance" : "time_limit");
  std::printf("lower_bound %.17g\n", vuc_result_lower_bound(res));
  std::printf("upper_bound %.17g\n", vuc_result_upper_bound(res));
  std::printf("relative_error %.17g\n", vuc_result_relative_error(res));
  std::printf("iterations %d\n", vuc_result_iterations(res));
  std::printf("wall_seconds %.3f\n", vuc_result_wall_seconds(res));
  return optimal ? 0 : 2;
}

int run_validate(const Options& o) {
  Instance inst;
  load_instance(o, o.load > 0, inst);
  Text rep;
  int errors = 0, warnings = 0;
  check(vuc_validate(inst.p, &rep.p, &errors, &warnings));
  std::fputs(rep.p, stdout);
  if (errors == 0 && warnings == 0) std::puts("ok");
  return errors == 0 ? 0 : 1;
}

int run_export(const Options& o) {
  Instance inst;
  load_instance(o, o.load > 0, inst);
  Text mps;
  check(vuc_export_mps(inst.p, &mps.p));
  emit(o.output, mps.p);
  return 0;
}

int run_dump(const Options& o) {
  Instance inst;
  if (o.load > 0) {
    load_instance(o, true, inst);
  } else if (vuc_instance_read(o.input.c_str(), &inst.p) != VUC_OK) {
    // A document of unit records only: the load does not affect the curve.
    check(vuc_instance_read_dispatch(o.input.c_str(), 1.0, &inst.p));
  }
  Text csv;
  check(vuc_breakpoints_csv(inst.p, o.unit.c_str(), o.segments, &csv.p));
  emit(o.output, csv.p);
  return 0;
}

void solve_flags(CLI::App* app, Options& o) {
  app->add_option("--tolerance", o.tolerance, "Relative gap between bounds at which to stop")
      ->check(CLI::PositiveNumber);
  app->add_option("--time-limit", o.time_limit, "Seconds; 0 for none")->check(CLI::NonNegativeNumber);
  app->add_option("--k-initial", o.k_initial, "Initial segments per refined interval")
      ->check(CLI::PositiveNumber);
  app->add_option("--backend", o.backend, "MIP backend")
      ->check(CLI::IsMember({"embedded", "external"}));
  app->add_option("--solver-cmd", o.solver_cmd,
                  "External solver command with {mps} and {sol} placeholders");
  app->add_option("--trace", o.trace_path, "Write the iteration trace CSV here");
  app->add_option("--solution", o.solution_path, "Write the schedule (u t y p rows) here");
  app->add_flag("--deterministic", o.deterministic, "Write 0 for wall-clock fields");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit commitment and load dispatch with valve-point costs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vuc_version());
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve a unit commitment instance");
  solve->add_option("instance", o.input, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--periods", o.periods, "Truncate or repeat the horizon")->check(CLI::PositiveNumber);
  solve_flags(solve, o);

  auto* eld = app.add_subcommand("eld", "Solve a load dispatch as a one-period commitment");
  eld->add_option("units", o.input, "File of unit records")->required()->check(CLI::ExistingFile);
  eld->add_option("--load", o.load, "System load in MW")->required()->check(CLI::PositiveNumber);
  solve_flags(eld, o);

  auto* validate = app.add_subcommand("validate", "Check an instance");
  validate->add_option("instance", o.input, "Instance file")->required()->check(CLI::ExistingFile);
  validate->add_option("--periods", o.periods)->check(CLI::PositiveNumber);
  validate->add_option("--load", o.load, "Treat the file as unit records at this load")
      ->check(CLI::PositiveNumber);

  auto* mps = app.add_subcommand("export-mps", "Write the first model as MPS");
  mps->add_option("instance", o.input, "Instance file")->required()->check(CLI::ExistingFile);
  mps->add_option("--periods", o.periods)->check(CLI::PositiveNumber);
  mps->add_option("--load", o.load, "Treat the file as unit records at this load")
      ->check(CLI::PositiveNumber);
  mps->add_option("-o,--output", o.output, "Output path (default stdout)");

  auto* dump = app.add_subcommand("dump-curve", "Write a unit's breakpoints as CSV");
  dump->add_option("instance", o.input, "Instance or unit-record file")->required()->check(CLI::ExistingFile);
  dump->add_option("--unit", o.unit, "Unit id")->required();
  dump->add_option("--segments", o.segments, "Divide every valve interval into this many parts")
      ->check(CLI::NonNegativeNumber);
  dump->add_option("--load", o.load)->check(CLI::PositiveNumber);
  dump->add_option("-o,--output", o.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(o, false);
    if (*eld) return run_solve(o, true);
    if (*validate) return run_validate(o);
    if (*mps) return run_export(o);
    if (*dump) return run_dump(o);
  } catch (const Failure& f) {
    return f.code;
  }
  return 1;
}
