#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reusemine/ck_metrics.hpp"
#include "reusemine/history.hpp"
#include "reusemine/reuse_metrics.hpp"
#include "reusemine/stats/design.hpp"
#include "reusemine/stats/models.hpp"

namespace reusemine::app {

enum class Command { Scan, Mine, Fit, Report, All, Synth };

std::string_view to_string(Command c);
Command command_from_string(std::string_view text);  // throws ConfigError

struct RunConfig {
    std::string repo_path;
    std::string branch = "HEAD";
    std::string project;  // defaults to the repository directory name
    std::optional<std::string> since_commit;
    std::optional<std::size_t> last_commits;
    std::optional<std::string> bug_ledger_path;
    std::optional<std::string> exclusion_list_path;
    stats::Aggregation aggregation = stats::Aggregation::Sum;
    stats::PredictorForm predictor_form = stats::PredictorForm::Levels;
    DelegationScope delegation_scope = DelegationScope::FieldsAndLocals;
    bool include_inherited_interfaces = false;
    WmcVariant wmc_variant = WmcVariant::MethodCount;
    ParseFailurePolicy parse_failures = ParseFailurePolicy::SkipFile;
    stats::Family glm_family = stats::Family::GlmGaussian;
    double vif_threshold = 10.0;
    bool pooled = false;  // one model over all projects with project indicators
    std::vector<std::string> panel_paths;  // default: <output_dir>/panel.csv
    std::string output_dir = "reusemine-out";
    std::uint64_t seed = 20240501;
    std::size_t synth_rows = 10000;

    MetricsOptions metrics_options() const;
    stats::PanelDesignOptions design_options() const;
    std::vector<std::string> effective_panel_paths() const;
    std::string effective_project() const;
};

// Reads a JSON object whose keys are RunConfig field names. Unknown keys
// and ill-typed values raise ConfigError. Relative paths are taken
// relative to the config file's directory.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(std::string_view json_text, const std::string& base_dir = "");

// Canonical JSON rendering (fixed key order), embedded in manifests.
std::string to_json(const RunConfig& config);

// Checks the fields `command` needs. Throws ConfigError.
void validate(const RunConfig& config, Command command);

} // namespace reusemine::app
