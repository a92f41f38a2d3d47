#include "valveuc/valveuc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "cost.hpp"
#include "error.hpp"
#include "instance.hpp"
#include "milp.hpp"
#include "refine.hpp"

struct vuc_instance {
  valveuc::Instance inst;
};

struct vuc_result {
  valveuc::Instance inst;
  valveuc::SolveResult res;
};

namespace {

thread_local std::string last_error;

vuc_status fail(vuc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Maps exceptions from the core onto status codes.
template <class F>
vuc_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const valveuc::ParseError& e) {
    return fail(VUC_E_PARSE, e.what());
  } catch (const valveuc::InvalidInstance& e) {
    return fail(VUC_E_INVALID, e.what());
  } catch (const valveuc::DomainError& e) {
    return fail(VUC_E_DOMAIN, e.what());
  } catch (const valveuc::InfeasibleError& e) {
    return fail(VUC_E_INFEASIBLE, e.what());
  } catch (const valveuc::NoIncumbentError& e) {
    return fail(VUC_E_NO_INCUMBENT, e.what());
  } catch (const valveuc::ExternalSolverError& e) {
    return fail(VUC_E_EXTERNAL, e.what());
  } catch (const valveuc::IoError& e) {
    return fail(VUC_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VUC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VUC_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

std::string slurp(const char* path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw valveuc::IoError(std::string("cannot open '") + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool valid_cell(const vuc_result* r, int u, int t) {
  return r && u >= 0 && t >= 0 && u < static_cast<int>(r->inst.units.size()) &&
         t < r->inst.periods;
}

}  // namespace

extern "C" {

const char* vuc_version(void) { return "1.0.0"; }

const char* vuc_last_error(void) { return last_error.c_str(); }

void vuc_string_free(char* s) { std::free(s); }

vuc_status vuc_instance_parse(const char* text, vuc_instance** out) {
  if (!text || !out) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new vuc_instance{valveuc::parse_instance(text)};
    return VUC_OK;
  });
}

vuc_status vuc_instance_read(const char* path, vuc_instance** out) {
  if (!path || !out) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new vuc_instance{valveuc::parse_instance(slurp(path))};
    return VUC_OK;
  });
}

vuc_status vuc_instance_dispatch(const char* units_text, double load, vuc_instance** out) {
  if (!units_text || !out) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new vuc_instance{valveuc::eld_to_ucp(valveuc::parse_units(units_text), load)};
    return VUC_OK;
  });
}

vuc_status vuc_instance_read_dispatch(const char* path, double load, vuc_instance** out) {
  if (!path || !out) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new vuc_instance{valveuc::eld_to_ucp(valveuc::parse_units(slurp(path)), load)};
    return VUC_OK;
  });
}

vuc_status vuc_instance_with_periods(const vuc_instance* inst, int periods, vuc_instance** out) {
  if (!inst || !out) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new vuc_instance{valveuc::with_periods(inst->inst, periods)};
    return VUC_OK;
  });
}

void vuc_instance_free(vuc_instance* inst) { delete inst; }

int vuc_instance_num_units(const vuc_instance* inst) {
  return inst ? static_cast<int>(inst->inst.units.size()) : 0;
}

int vuc_instance_num_periods(const vuc_instance* inst) { return inst ? inst->inst.periods : 0; }

vuc_status vuc_instance_format(const vuc_instance* inst, char** text) {
  if (!inst || !text) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *text = dup(valveuc::format_instance(inst->inst));
    return VUC_OK;
  });
}

vuc_status vuc_validate(const vuc_instance* inst, char** report, int* num_errors,
                        int* num_warnings) {
  if (!inst || !report) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    const auto rep = valveuc::validate(inst->inst);
    std::string out;
    for (const auto& d : rep.errors) out += "error " + d.code + ": " + d.message + "\n";
    for (const auto& d : rep.warnings) out += "warning " + d.code + ": " + d.message + "\n";
    *report = dup(out);
    if (num_errors) *num_errors = static_cast<int>(rep.errors.size());
    if (num_warnings) *num_warnings = static_cast<int>(rep.warnings.size());
    return VUC_OK;
  });
}

vuc_status vuc_breakpoints_csv(const vuc_instance* inst, const char* unit_id, int segments,
                               char** csv) {
  if (!inst || !unit_id || !csv) return fail(VUC_E_ARGUMENT, "null argument");
  if (segments < 0) return fail(VUC_E_ARGUMENT, "segments must be nonnegative");
  return guarded([&] {
    for (const auto& u : inst->inst.units) {
      if (u.id != unit_id) continue;
      auto b = valveuc::initial_breakpoints(u);
      if (segments > 0)
        for (std::size_t j = 0; j < b.interval_count(); ++j) {
          const double mid = 0.5 * (b.valves()[j] + b.valves()[j + 1]);
          b = valveuc::refine_breakpoints(b, mid, segments);
        }
      *csv = dup(valveuc::breakpoints_csv(b));
      return VUC_OK;
    }
    return fail(VUC_E_ARGUMENT, std::string("no unit with id '") + unit_id + "'");
  });
}

vuc_status vuc_export_mps(const vuc_instance* inst, char** mps) {
  if (!inst || !mps) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    const auto rep = valveuc::validate(inst->inst);
    if (!rep.ok()) throw valveuc::InvalidInstance(rep.errors.front().message);
    valveuc::BreakpointGrid grid;
    for (const auto& u : inst->inst.units)
      grid.emplace_back(inst->inst.periods, valveuc::initial_breakpoints(u));
    *mps = dup(valveuc::export_mps(valveuc::build_model(inst->inst, grid).model));
    return VUC_OK;
  });
}

void vuc_config_default(vuc_config* cfg) {
  if (!cfg) return;
  cfg->tolerance = 1e-7;
  cfg->time_limit = 0.0;
  cfg->k_initial = 2;
  cfg->backend = VUC_BACKEND_EMBEDDED;
  cfg->solver_cmd = nullptr;
  cfg->deterministic = 0;
}

vuc_status vuc_solve(const vuc_instance* inst, const vuc_config* cfg, vuc_result** out) {
  if (!inst || !out) return fail(VUC_E_ARGUMENT, "null argument");
  vuc_config c;
  vuc_config_default(&c);
  if (cfg) c = *cfg;
  if (!(c.tolerance > 0)) return fail(VUC_E_ARGUMENT, "tolerance must be positive");
  if (c.k_initial < 1) return fail(VUC_E_ARGUMENT, "k_initial must be at least 1");
  if (c.backend == VUC_BACKEND_EXTERNAL && (!c.solver_cmd || !*c.solver_cmd))
    return fail(VUC_E_ARGUMENT, "external backend needs a solver command");
  return guarded([&] {
    valveuc::RefineConfig rc;
    rc.tolerance = c.tolerance;
    rc.time_limit = c.time_limit > 0 ? c.time_limit : std::numeric_limits<double>::infinity();
    rc.k_initial = c.k_initial;
    rc.backend = c.backend == VUC_BACKEND_EXTERNAL ? valveuc::Backend::External
                                                   : valveuc::Backend::Embedded;
    if (c.solver_cmd) rc.solver_cmd = c.solver_cmd;
    rc.record_wall_time = c.deterministic == 0;
    auto r = std::make_unique<vuc_result>();
    r->inst = inst->inst;
    r->res = valveuc::solve_ucp(inst->inst, rc);
    *out = r.release();
    return VUC_OK;
  });
}

void vuc_result_free(vuc_result* res) { delete res; }

vuc_solve_status vuc_result_status(const vuc_result* res) {
  return res && res->res.status == valveuc::SolveStatus::OptimalWithinTolerance
             ? VUC_SOLVE_OPTIMAL
             : VUC_SOLVE_TIME_LIMIT;
}

double vuc_result_lower_bound(const vuc_result* res) { return res ? res->res.lower_bound : NAN; }
double vuc_result_upper_bound(const vuc_result* res) { return res ? res->res.upper_bound : NAN; }
double vuc_result_relative_error(const vuc_result* res) {
  return res ? res->res.relative_error : NAN;
}
int vuc_result_iterations(const vuc_result* res) { return res ? res->res.iterations : 0; }
double vuc_result_wall_seconds(const vuc_result* res) { return res ? res->res.wall_seconds : NAN; }

int vuc_result_commitment(const vuc_result* res, int unit, int period) {
  return valid_cell(res, unit, period) ? res->res.schedule[unit][period] : -1;
}

double vuc_result_dispatch(const vuc_result* res, int unit, int period) {
  return valid_cell(res, unit, period) ? res->res.dispatch[unit][period] : NAN;
}

vuc_status vuc_result_trace_csv(const vuc_result* res, char** csv) {
  if (!res || !csv) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *csv = dup(valveuc::trace_csv(res->res));
    return VUC_OK;
  });
}

vuc_status vuc_result_solution(const vuc_result* res, char** text) {
  if (!res || !text) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    *text = dup(valveuc::solution_text(res->inst, res->res));
    return VUC_OK;
  });
}

vuc_status vuc_write_file(const char* path, const char* text) {
  if (!path || !text) return fail(VUC_E_ARGUMENT, "null argument");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw valveuc::IoError(std::string("cannot open '") + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw valveuc::IoError(std::string("cannot write '") + path + "'");
    return VUC_OK;
  });
}

}  // extern "C"
