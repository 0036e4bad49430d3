#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "noether/error.hpp"
#include "problem.hpp"

namespace noether::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kInputError = 2, kVerificationFailure = 3 };

struct RunOptions {
    std::uint64_t seed = 1;
    int max_order = kDefaultOrderCap;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    bool timings = false;  // wall-clock timings make reports non-reproducible
};

struct RunResult {
    Json report;
    int exit_code = kPass;
};

/// parse -> EL -> ansatz -> nullspace -> charges -> checks -> drift.
RunResult run_solve(const ProblemFile& problem, const RunOptions& options);
/// Primed-coordinate workflow of the [transform] block.
RunResult run_transform(const ProblemFile& problem, const RunOptions& options);
/// Drift of the expected integrals only, without solving for symmetries.
RunResult run_verify(const ProblemFile& problem, const RunOptions& options);

/// Report for an input error or an aborted verification.
RunResult error_result(const std::string& command, const std::string& source, const Error& error);

std::string render_machine(const Json& report);
/// Same facts as the machine report, laid out for reading.
std::string render_human(const Json& report);

}  // namespace noether::cli
