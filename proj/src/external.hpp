#pragma once

#include <string>

#include "mip.hpp"

namespace valveuc {

/// Runs an external MIP solver through a shell command template. `{mps}` and
/// `{sol}` are replaced by the model and solution paths; `{gap}` and `{time}`
/// by the limits. The solver must exit with status 0 and write
/// `<name> <value>` lines, optionally with a `# bound <value>` comment.
/// The returned incumbent is checked by substitution and its objective
/// recomputed here. Throws ExternalSolverError or ParseError.
MipOutcome solve_external(const MilpModel& model, const std::string& command,
                          const MipLimits& limits,
                          const WarmStart* start = nullptr);

}  // namespace valveuc
