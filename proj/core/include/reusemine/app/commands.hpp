#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reusemine/app/config.hpp"
#include "reusemine/diagnostics.hpp"
#include "reusemine/history.hpp"

namespace reusemine::app {

struct CommandResult {
    DiagnosticLog diagnostics;
    // Exit code of the first error recorded in `diagnostics`; 0 when only
    // warnings were emitted.
    int exit_code = 0;
    std::vector<std::string> summary;  // short human-readable lines
};

// Each command writes its artifacts under config.output_dir. Errors that
// prevent the command from producing anything are thrown; errors confined
// to one model or series are recorded in the result and the remaining
// artifacts are still written.
CommandResult cmd_scan(const RunConfig& config);
CommandResult cmd_mine(const RunConfig& config);
CommandResult cmd_fit(const RunConfig& config);
CommandResult cmd_report(const RunConfig& config);
CommandResult cmd_fit_and_report(const RunConfig& config);
CommandResult cmd_all(const RunConfig& config);
CommandResult cmd_synth(const RunConfig& config);

// Validates the config, runs the command, then writes its diagnostics log
// and the manifest.
CommandResult run_command(Command command, const RunConfig& config);

// Generative coefficients of the synthetic panel: one row per category
// (the reference row "stable" is zero), one column per term with
// "(intercept)" first, on the raw predictor scale.
struct SyntheticTruth {
    std::vector<std::string> categories;
    std::vector<std::string> terms;
    std::vector<std::vector<double>> coefficients;
};

// Panel rows whose bug-delta labels follow a softmax model in the three
// reuse sums; every other predictor is noise.
std::vector<PanelRow> synthetic_panel(std::size_t rows, std::uint64_t seed, SyntheticTruth* truth = nullptr);

} // namespace reusemine::app
