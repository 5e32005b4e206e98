#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "pdmsusy/cli/config.hpp"

namespace pdmsusy::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitCheckFailed = 1,
    kExitConfigError = 2,
    kExitNumericalError = 3,
};

struct RunResult {
    nlohmann::json report;
    int exit_code = kExitPass;
};

/// Runs the requested checks. Every requested check appears once in
/// report["checks"] with status "pass", "fail" or "skipped" (with a reason).
/// Module errors propagate, tagged with the stage name.
RunResult run(const RunConfig& config);

/// Discrete spectrum of H on the config grid, the closed-form lowest
/// eigenvalues and the conjugate-closure distance.
RunResult run_spectrum(const RunConfig& config);

/// Constraint residuals on the grid and `refinements` halvings of it.
RunResult run_convergence(const RunConfig& config, int refinements);

/// The built-in reproduction suite; runs with no external files.
RunResult paper_examples();

/// Writes the plot-ready CSV for the config model on its grid.
void emit_curves(const RunConfig& config, const std::filesystem::path& path);

/// Report keys that hold wall-clock data; everything else is deterministic.
inline constexpr const char* kTimingKey = "timing_seconds";

}  // namespace pdmsusy::cli
