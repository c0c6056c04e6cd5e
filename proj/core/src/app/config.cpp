#include "reusemine/app/config.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "reusemine/csv.hpp"
#include "reusemine/errors.hpp"

namespace reusemine::app {

namespace fs = std::filesystem;

std::string_view to_string(Command c) {
    switch (c) {
    case Command::Scan:
        return "scan";
    case Command::Mine:
        return "mine";
    case Command::Fit:
        return "fit";
    case Command::Report:
        return "report";
    case Command::All:
        return "all";
    case Command::Synth:
        return "synth";
    }
    return "all";
}

Command command_from_string(std::string_view text) {
    for (Command c : {Command::Scan, Command::Mine, Command::Fit, Command::Report, Command::All, Command::Synth}) {
        if (to_string(c) == text) return c;
    }
    throw ConfigError("unknown command '" + std::string(text) + "'");
}

MetricsOptions RunConfig::metrics_options() const {
    MetricsOptions o;
    o.reuse.delegation_scope = delegation_scope;
    o.reuse.include_inherited_interfaces = include_inherited_interfaces;
    o.ck.wmc = wmc_variant;
    return o;
}

stats::PanelDesignOptions RunConfig::design_options() const {
    stats::PanelDesignOptions o;
    o.aggregation = aggregation;
    o.form = predictor_form;
    o.project_indicators = pooled;
    return o;
}

std::vector<std::string> RunConfig::effective_panel_paths() const {
    if (!panel_paths.empty()) return panel_paths;
    return {(fs::path(output_dir) / "panel.csv").string()};
}

std::string RunConfig::effective_project() const {
    if (!project.empty()) return project;
    if (repo_path.empty()) return "project";
    fs::path p = fs::path(repo_path).lexically_normal();
    if (p.filename().empty()) p = p.parent_path();
    const std::string name = p.filename().string();
    return name.empty() || name == "." ? "project" : name;
}

namespace {

std::string_view family_name(stats::Family f) { return f == stats::Family::GlmPoisson ? "poisson" : "gaussian"; }

stats::Family family_from_string(std::string_view text) {
    if (text == "gaussian") return stats::Family::GlmGaussian;
    if (text == "poisson") return stats::Family::GlmPoisson;
    throw ConfigError("unknown glm_family '" + std::string(text) + "' (expected gaussian or poisson)");
}

std::string_view parse_failure_name(ParseFailurePolicy p) {
    return p == ParseFailurePolicy::DropSnapshot ? "drop_snapshot" : "skip_file";
}

ParseFailurePolicy parse_failure_from_string(std::string_view text) {
    if (text == "skip_file") return ParseFailurePolicy::SkipFile;
    if (text == "drop_snapshot") return ParseFailurePolicy::DropSnapshot;
    throw ConfigError("unknown parse_failures '" + std::string(text) + "' (expected skip_file or drop_snapshot)");
}

std::string resolve_path(const std::string& base, const std::string& p) {
    if (base.empty() || p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base) / p).lexically_normal().string();
}

} // namespace

RunConfig parse_run_config(std::string_view json_text, const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "repo_path") {
                c.repo_path = resolve_path(base_dir, value.get<std::string>());
            } else if (key == "branch") {
                c.branch = value.get<std::string>();
            } else if (key == "project") {
                c.project = value.get<std::string>();
            } else if (key == "commit_range") {
                if (!value.is_object()) throw ConfigError("commit_range must be an object with 'since' and/or 'last'");
                for (const auto& [k, v] : value.items()) {
                    if (k == "since") {
                        if (!v.is_null()) c.since_commit = v.get<std::string>();
                    } else if (k == "last") {
                        if (!v.is_null()) c.last_commits = v.get<std::size_t>();
                    } else {
                        throw ConfigError("unknown commit_range key '" + k + "'");
                    }
                }
            } else if (key == "bug_ledger_path") {
                if (!value.is_null()) c.bug_ledger_path = resolve_path(base_dir, value.get<std::string>());
            } else if (key == "exclusion_list_path") {
                if (!value.is_null()) c.exclusion_list_path = resolve_path(base_dir, value.get<std::string>());
            } else if (key == "aggregation") {
                c.aggregation = stats::aggregation_from_string(value.get<std::string>());
            } else if (key == "predictor_form") {
                c.predictor_form = stats::predictor_form_from_string(value.get<std::string>());
            } else if (key == "delegation_scope") {
                c.delegation_scope = delegation_scope_from_string(value.get<std::string>());
            } else if (key == "include_inherited_interfaces") {
                c.include_inherited_interfaces = value.get<bool>();
            } else if (key == "wmc_variant") {
                c.wmc_variant = wmc_variant_from_string(value.get<std::string>());
            } else if (key == "parse_failures") {
                c.parse_failures = parse_failure_from_string(value.get<std::string>());
            } else if (key == "glm_family") {
                c.glm_family = family_from_string(value.get<std::string>());
            } else if (key == "vif_threshold") {
                c.vif_threshold = value.get<double>();
            } else if (key == "pooled") {
                c.pooled = value.get<bool>();
            } else if (key == "panel_paths") {
                for (const auto& p : value) c.panel_paths.push_back(resolve_path(base_dir, p.get<std::string>()));
            } else if (key == "output_dir") {
                c.output_dir = resolve_path(base_dir, value.get<std::string>());
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "synth_rows") {
                c.synth_rows = value.get<std::size_t>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    const std::string text = read_text_file(path);
    const std::string base = fs::path(path).parent_path().string();
    try {
        return parse_run_config(text, base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["repo_path"] = c.repo_path;
    j["branch"] = c.branch;
    j["project"] = c.effective_project();
    nlohmann::ordered_json range = nlohmann::ordered_json::object();
    if (c.since_commit) range["since"] = *c.since_commit;
    if (c.last_commits) range["last"] = *c.last_commits;
    j["commit_range"] = range;
    j["bug_ledger_path"] = c.bug_ledger_path ? nlohmann::ordered_json(*c.bug_ledger_path) : nlohmann::ordered_json();
    j["exclusion_list_path"] =
        c.exclusion_list_path ? nlohmann::ordered_json(*c.exclusion_list_path) : nlohmann::ordered_json();
    j["aggregation"] = std::string(stats::to_string(c.aggregation));
    j["predictor_form"] = std::string(stats::to_string(c.predictor_form));
    j["delegation_scope"] = std::string(to_string(c.delegation_scope));
    j["include_inherited_interfaces"] = c.include_inherited_interfaces;
    j["wmc_variant"] = std::string(to_string(c.wmc_variant));
    j["parse_failures"] = std::string(parse_failure_name(c.parse_failures));
    j["glm_family"] = std::string(family_name(c.glm_family));
    j["vif_threshold"] = c.vif_threshold;
    j["pooled"] = c.pooled;
    j["panel_paths"] = c.effective_panel_paths();
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    j["synth_rows"] = c.synth_rows;
    return j.dump();
}

void validate(const RunConfig& c, Command command) {
    auto require_file = [](const std::optional<std::string>& p, const char* what) {
        if (p && !fs::is_regular_file(*p)) throw ConfigError(std::string(what) + " '" + *p + "' does not exist");
    };
    if (!(c.vif_threshold > 1.0)) throw ConfigError("vif_threshold must be greater than 1");
    if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (command == Command::Scan || command == Command::Mine || command == Command::All) {
        if (c.repo_path.empty()) throw ConfigError("repo_path is required (config key repo_path or --repo)");
        if (!fs::is_directory(c.repo_path)) throw ConfigError("repo_path '" + c.repo_path + "' is not a directory");
    }
    if (command == Command::Mine || command == Command::All) {
        if (c.branch.empty()) throw ConfigError("branch must not be empty");
        if (c.last_commits && *c.last_commits == 0) throw ConfigError("commit_range.last must be positive");
        require_file(c.bug_ledger_path, "bug ledger");
        require_file(c.exclusion_list_path, "exclusion list");
    }
    if (command == Command::Fit || command == Command::Report) {
        for (const std::string& p : c.effective_panel_paths()) {
            if (!fs::is_regular_file(p)) throw ConfigError("panel file '" + p + "' does not exist; run 'mine' first");
        }
    }
    if (command == Command::Synth && c.synth_rows < 10) throw ConfigError("synth_rows must be at least 10");
}

} // namespace reusemine::app
