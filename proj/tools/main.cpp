#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reusemine/app/commands.hpp"
#include "reusemine/app/config.hpp"
#include "reusemine/errors.hpp"
#include "reusemine/stats/design.hpp"

namespace {

using reusemine::app::Command;
using reusemine::app::RunConfig;

struct Overrides {
    std::string config_path;
    std::optional<std::string> repo;
    std::optional<std::string> branch;
    std::optional<std::string> ledger;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> aggregation;
    std::optional<std::string> glm_family;
    std::optional<std::string> panel;
    std::optional<std::size_t> rows;
    bool pooled = false;
};

void add_common_flags(CLI::App& sub, Overrides& o) {
    sub.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub.add_option("--repo", o.repo, "repository or source tree");
    sub.add_option("--branch", o.branch, "branch or revision to walk");
    sub.add_option("--ledger", o.ledger, "bug ledger CSV (bug_id,introducing_commit,fixing_commit)");
    sub.add_option("--out", o.out, "output directory");
    sub.add_option("--seed", o.seed, "seed for synthetic generators");
    sub.add_option("--aggregation", o.aggregation, "snapshot aggregation")->check(CLI::IsMember({"sum", "mean"}));
    sub.add_option("--glm-family", o.glm_family, "family of the churn model")
        ->check(CLI::IsMember({"gaussian", "poisson"}));
    sub.add_option("--panel", o.panel, "panel CSV to fit or report (replaces panel_paths)");
    sub.add_flag("--pooled", o.pooled, "fit one model over all projects with project indicators");
}

RunConfig effective_config(const Overrides& o) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : reusemine::app::load_run_config(o.config_path);
    if (o.repo) c.repo_path = *o.repo;
    if (o.branch) c.branch = *o.branch;
    if (o.ledger) c.bug_ledger_path = *o.ledger;
    if (o.out) c.output_dir = *o.out;
    if (o.seed) c.seed = *o.seed;
    if (o.aggregation) c.aggregation = reusemine::stats::aggregation_from_string(*o.aggregation);
    if (o.glm_family) {
        c.glm_family = *o.glm_family == "poisson" ? reusemine::stats::Family::GlmPoisson
                                                  : reusemine::stats::Family::GlmGaussian;
    }
    if (o.panel) c.panel_paths = {*o.panel};
    if (o.rows) c.synth_rows = *o.rows;
    if (o.pooled) c.pooled = true;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mines Java repositories for code reuse metrics and relates them to defects and churn."};
    app.require_subcommand(1);

    Overrides overrides;
    struct Entry {
        Command command;
        const char* help;
    };
    const Entry entries[] = {
        {Command::Scan, "compute per-class metrics of a source tree"},
        {Command::Mine, "walk the history and build the panel dataset"},
        {Command::Fit, "VIF screening and the bug-delta and churn models"},
        {Command::Report, "trend summaries, charts and the reuse/defect co-occurrence report"},
        {Command::All, "mine, fit and report"},
        {Command::Synth, "write a seeded synthetic panel with known generating coefficients"},
    };
    std::optional<Command> chosen;
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(std::string(reusemine::app::to_string(e.command)), e.help);
        add_common_flags(*sub, overrides);
        if (e.command == Command::Synth) sub->add_option("--rows", overrides.rows, "number of panel rows");
        sub->callback([&chosen, c = e.command] { chosen = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors share the configuration exit code.
        return app.exit(e) == 0 ? 0 : reusemine::ConfigError("").exit_code();
    }

    try {
        const RunConfig config = effective_config(overrides);
        const auto result = reusemine::app::run_command(*chosen, config);
        for (const auto& d : result.diagnostics) {
            std::cerr << reusemine::level_name(d.level) << ": " << d.message << "\n";
        }
        for (const std::string& line : result.summary) std::cout << line << "\n";
        return result.exit_code;
    } catch (const reusemine::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
