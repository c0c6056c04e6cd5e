#include "reusemine/app/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reusemine/app/artifacts.hpp"
#include "reusemine/class_metrics.hpp"
#include "reusemine/csv.hpp"
#include "reusemine/errors.hpp"
#include "reusemine/git_repository.hpp"
#include "reusemine/source_model.hpp"
#include "reusemine/stats/collinearity.hpp"
#include "reusemine/stats/cooccurrence.hpp"
#include "reusemine/stats/design.hpp"
#include "reusemine/stats/models.hpp"
#include "reusemine/stats/trend.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine::app {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void record_error(CommandResult& r, const std::string& context, const Error& e) {
    r.diagnostics.push_back({Diagnostic::Level::Error, context + ": " + e.what()});
    if (r.exit_code == 0) r.exit_code = e.exit_code();
}

void merge(CommandResult& into, CommandResult from) {
    for (auto& d : from.diagnostics) into.diagnostics.push_back(std::move(d));
    for (auto& s : from.summary) into.summary.push_back(std::move(s));
    if (into.exit_code == 0) into.exit_code = from.exit_code;
}

ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

// Keeps scope names usable as directory names.
std::string path_safe(std::string_view name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                        c == '_' || c == '-';
        out += ok ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

std::string metric_header_row(std::vector<std::string> leading) {
    for (std::string_view m : kMetricNames) leading.emplace_back(m);
    std::ostringstream out;
    write_csv_row(out, leading);
    return out.str();
}

std::vector<PanelRow> load_panels(const RunConfig& c) {
    std::vector<PanelRow> rows;
    for (const std::string& path : c.effective_panel_paths()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot read panel file '" + path + "'");
        auto part = read_panel_csv(in, path);
        rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return rows;
}

std::map<std::string, std::vector<PanelRow>> by_project(const std::vector<PanelRow>& rows) {
    std::map<std::string, std::vector<PanelRow>> out;
    for (const PanelRow& r : rows) out[r.project].push_back(r);
    for (auto& [_, v] : out) {
        std::stable_sort(v.begin(), v.end(), [](const PanelRow& a, const PanelRow& b) { return a.to_index < b.to_index; });
    }
    return out;
}

// ---- fit -------------------------------------------------------------------

ordered_json screening_json(const stats::ScreeningResult& s) {
    ordered_json removed = ordered_json::array();
    for (const stats::Removal& rm : s.removals) {
        removed.push_back({{"column", rm.column}, {"vif", json_number(rm.vif)}, {"reason", rm.reason}});
    }
    ordered_json kept = ordered_json::array();
    for (std::size_t j = 0; j < s.final_vif.column_names.size(); ++j) {
        kept.push_back({{"column", s.final_vif.column_names[j]}, {"vif", json_number(s.final_vif.vif[j])}});
    }
    return {{"removed", removed}, {"kept", kept}};
}

std::string screening_csv(const stats::ScreeningResult& s) {
    std::ostringstream out;
    write_csv_row(out, {"column", "vif", "status", "reason"});
    for (std::size_t j = 0; j < s.final_vif.column_names.size(); ++j) {
        write_csv_row(out, {s.final_vif.column_names[j], format_number(s.final_vif.vif[j]), "kept", ""});
    }
    for (const stats::Removal& rm : s.removals) write_csv_row(out, {rm.column, format_number(rm.vif), "removed", rm.reason});
    return out.str();
}

ordered_json predictor_summary(const stats::DesignMatrix& m) {
    ordered_json out = ordered_json::array();
    const double n = static_cast<double>(m.rows());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double mean = m.x.col(j).mean();
        const double sd = n > 1 ? std::sqrt((m.x.col(j).array() - mean).square().sum() / (n - 1)) : 0.0;
        out.push_back({{"column", m.column_names[static_cast<std::size_t>(j)]},
                       {"mean", json_number(mean)},
                       {"sd", json_number(sd)}});
    }
    return out;
}

struct ModelSpec {
    std::string name;  // file stem
    stats::Response response;
};

void fit_scope(const RunConfig& c, const std::string& scope, const std::vector<PanelRow>& rows, CommandResult& r) {
    const std::string dir = "fit/" + path_safe(scope) + "/";
    const stats::PanelDesignOptions opts = c.design_options();
    const auto protected_columns = stats::reuse_predictor_names(opts);

    for (const ModelSpec& spec : {ModelSpec{"rq2_multinomial", stats::Response::BugDelta},
                                  ModelSpec{"rq3_glm", stats::Response::Churn}}) {
        const std::string context = spec.name + " [" + scope + "]";
        try {
            const stats::DesignMatrix design = stats::panel_design(rows, spec.response, opts);
            const stats::ScreeningResult screening =
                stats::screen_collinearity(design, c.vif_threshold, protected_columns);
            write_artifact(c.output_dir, dir + spec.name + "_vif.csv", screening_csv(screening));

            stats::FitResult fit;
            if (spec.response == stats::Response::BugDelta) {
                fit = stats::fit_multinomial(screening.matrix);
            } else {
                stats::GlmOptions g;
                g.family = c.glm_family;
                g.transform = c.glm_family == stats::Family::GlmGaussian ? stats::ResponseTransform::Log1p
                                                                          : stats::ResponseTransform::None;
                fit = stats::fit_glm(screening.matrix, g);
            }

            ordered_json j;
            j["scope"] = scope;
            j["response"] = spec.response == stats::Response::BugDelta ? "bug_delta" : "churn";
            j["aggregation"] = std::string(stats::to_string(c.aggregation));
            j["predictor_form"] = std::string(stats::to_string(c.predictor_form));
            j["rows"] = rows.size();
            j["vif_threshold"] = c.vif_threshold;
            j["screening"] = screening_json(screening);
            j["predictor_summary"] = predictor_summary(screening.matrix);
            j["fit"] = ordered_json::parse(stats::fit_to_json(fit));
            write_artifact(c.output_dir, dir + spec.name + ".json", j.dump(2) + "\n");

            std::ostringstream table;
            table << context << ": " << rows.size() << " rows\n";
            if (!screening.removals.empty()) {
                table << "removed by VIF screening:";
                for (const auto& rm : screening.removals) table << " " << rm.column << " (" << rm.reason << ")";
                table << "\n";
            }
            stats::write_fit_table(table, fit);
            write_artifact(c.output_dir, dir + spec.name + ".txt", table.str());

            std::ostringstream line;
            line << context << ": " << (fit.converged ? "converged" : "did not converge") << " after "
                 << fit.iterations << " iterations, log-likelihood " << format_number(fit.log_likelihood);
            r.summary.push_back(line.str());
            if (!fit.converged) warn(r.diagnostics, context + ": iteration limit reached before convergence");
        } catch (const SeparationError& e) {
            record_error(r, context,
                         SeparationError(std::string(e.what()) +
                                         "; drop or merge the separating predictors, or pool more rows"));
        } catch (const Error& e) {
            record_error(r, context, e);
        }
    }
}

// ---- report ----------------------------------------------------------------

struct SeriesPoint {
    std::size_t order_index = 0;
    std::string commit;
    std::array<double, kReuseMetricCount> values{};
};

// Reuse levels at every commit the panel touches: each row contributes its
// destination and, through the delta, its origin.
std::vector<SeriesPoint> reuse_series(const std::vector<PanelRow>& rows, stats::Aggregation aggregation) {
    std::map<std::size_t, SeriesPoint> points;
    for (const PanelRow& r : rows) {
        const MetricArray& level = aggregation == stats::Aggregation::Sum ? r.sum : r.mean;
        const MetricArray& delta = aggregation == stats::Aggregation::Sum ? r.sum_delta : r.mean_delta;
        SeriesPoint to{r.to_index, r.to_commit, {}};
        SeriesPoint from{r.from_index, r.from_commit, {}};
        for (std::size_t m = 0; m < kReuseMetricCount; ++m) {
            to.values[m] = level[m];
            from.values[m] = level[m] - delta[m];
        }
        points.emplace(from.order_index, from);
        points[to.order_index] = to;
    }
    std::vector<SeriesPoint> out;
    for (auto& [_, p] : points) out.push_back(std::move(p));
    return out;
}

void write_cooccurrence_rows(std::ostream& out, const std::string& scope, const stats::CooccurrenceReport& rep) {
    auto row = [&](std::string_view name, const stats::CooccurrenceCounts& k) {
        write_csv_row(out, {scope, std::string(name), std::to_string(k.inducing_with_variation),
                            std::to_string(k.inducing_without_variation), std::to_string(k.non_inducing_with_variation),
                            std::to_string(k.non_inducing_without_variation), std::to_string(k.total())});
    };
    for (std::size_t m = 0; m < kReuseMetricCount; ++m) row(kMetricNames[m], rep.per_metric[m]);
    row("any", rep.any);
    row("all", rep.all);
}

} // namespace

// ---- commands -----------------------------------------------------------------

CommandResult cmd_scan(const RunConfig& c) {
    CommandResult r;
    const fs::path root(c.repo_path);
    std::vector<std::string> files;
    for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_directory() && it->path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (it->is_regular_file() && it->path().extension() == ".java") {
            files.push_back(fs::relative(it->path(), root).generic_string());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) warn(r.diagnostics, "no .java files under '" + c.repo_path + "'");

    std::vector<CompilationUnitModel> units;
    units.reserve(files.size());
    for (const std::string& rel : files) {
        units.push_back(parse_compilation_unit(read_text_file((root / rel).string()), rel));
    }
    const TypeGraph graph = build_type_graph(units);
    const auto records = compute_snapshot_metrics(graph, c.metrics_options());

    std::ostringstream classes;
    classes << metric_header_row({"class_name", "kind"});
    for (const ClassMetricsRecord& rec : records) {
        std::vector<std::string> row{rec.class_name, std::string(to_string(rec.kind))};
        for (double v : metric_values(rec)) row.push_back(format_number(v));
        write_csv_row(classes, row);
    }
    write_artifact(c.output_dir, "scan/classes.csv", classes.str());

    const SnapshotAggregate agg = aggregate(records);
    std::ostringstream summary;
    summary << metric_header_row({"statistic", "class_count"});
    for (const auto& [name, values] : {std::pair{"sum", agg.sum}, std::pair{"mean", agg.mean}}) {
        std::vector<std::string> row{name, std::to_string(agg.class_count)};
        for (double v : values) row.push_back(format_number(v));
        write_csv_row(summary, row);
    }
    write_artifact(c.output_dir, "scan/summary.csv", summary.str());
    r.summary.push_back("scan: " + std::to_string(files.size()) + " files, " + std::to_string(records.size()) +
                        " types");
    return r;
}

CommandResult cmd_mine(const RunConfig& c) {
    CommandResult r;
    const GitRepository repo(c.repo_path);
    const auto commits = walk_history(repo, c.branch, HistoryLimits{c.since_commit, c.last_commits});

    BugLedger ledger;
    if (c.bug_ledger_path) ledger = load_bug_ledger(*c.bug_ledger_path);
    if (c.exclusion_list_path) ledger = apply_exclusions(ledger, load_exclusion_list(*c.exclusion_list_path));
    const ActiveBugIndex index(ledger, commits);

    SnapshotBuilder builder(repo, SnapshotOptions{c.metrics_options(), c.parse_failures});
    std::vector<std::optional<SnapshotAggregate>> snapshots;
    snapshots.reserve(commits.size());
    for (const CommitRecord& commit : commits) snapshots.push_back(builder.aggregate_at(commit, r.diagnostics));

    const auto panel = assemble_panel(c.effective_project(), commits, snapshots, index, r.diagnostics);

    std::ostringstream csv, jsonl, series;
    write_panel_csv(csv, panel);
    write_panel_jsonl(jsonl, panel);
    write_series_csv(series, commits, snapshots, index);
    write_artifact(c.output_dir, "panel.csv", csv.str());
    write_artifact(c.output_dir, "panel.jsonl", jsonl.str());
    write_artifact(c.output_dir, "series.csv", series.str());

    const auto missing = static_cast<std::size_t>(std::count(snapshots.begin(), snapshots.end(), std::nullopt));
    r.summary.push_back("mine: " + std::to_string(commits.size()) + " commits, " + std::to_string(panel.size()) +
                        " panel rows, " + std::to_string(missing) + " missing snapshots, " +
                        std::to_string(ledger.entries.size()) + " ledger bugs");
    return r;
}

CommandResult cmd_fit(const RunConfig& c) {
    CommandResult r;
    const auto rows = load_panels(c);
    if (c.pooled) {
        fit_scope(c, "pooled", rows, r);
    } else {
        const auto groups = by_project(rows);
        if (groups.empty()) {
            record_error(r, "fit", DegenerateMatrix("the panel has no rows; fitting needs n > p"));
        }
        for (const auto& [project, project_rows] : groups) fit_scope(c, project, project_rows, r);
    }
    return r;
}

CommandResult cmd_report(const RunConfig& c) {
    CommandResult r;
    const auto rows = load_panels(c);
    const auto groups = by_project(rows);

    std::ostringstream trends, cooc, candidates, text;
    write_csv_row(trends, {"project", "metric", "n", "spearman_rho", "mann_kendall_s", "mann_kendall_variance",
                           "mann_kendall_z", "mann_kendall_p", "direction", "significant", "min", "max", "mean",
                           "median"});
    write_csv_row(cooc, {"scope", "reuse_metric", "inducing_with_variation", "inducing_without_variation",
                         "non_inducing_with_variation", "non_inducing_without_variation", "total"});
    write_csv_row(candidates, {"project", "commit", "spec_inheritance_delta", "impl_inheritance_delta",
                               "delegation_delta", "bug_ids"});
    text << "aggregation: " << stats::to_string(c.aggregation) << "\n";

    for (const auto& [project, project_rows] : groups) {
        const std::string dir = "report/" + path_safe(project) + "/";
        const auto series = reuse_series(project_rows, c.aggregation);

        std::ostringstream series_csv;
        write_csv_row(series_csv, {"order_index", "commit_id", "spec_inheritance", "impl_inheritance", "delegation"});
        for (const SeriesPoint& p : series) {
            write_csv_row(series_csv, {std::to_string(p.order_index), p.commit, format_number(p.values[0]),
                                       format_number(p.values[1]), format_number(p.values[2])});
        }
        write_artifact(c.output_dir, dir + "reuse_series.csv", series_csv.str());

        text << "\nproject " << project << ": " << project_rows.size() << " panel rows, " << series.size()
             << " commits in the reuse series\n";
        for (std::size_t m = 0; m < kReuseMetricCount; ++m) {
            const std::string metric(kMetricNames[m]);
            std::vector<double> xs, ys;
            for (const SeriesPoint& p : series) {
                xs.push_back(static_cast<double>(p.order_index));
                ys.push_back(p.values[m]);
            }
            write_artifact(c.output_dir, dir + metric + ".svg",
                           render_series_svg(project + ": " + metric + " (" +
                                                 std::string(stats::to_string(c.aggregation)) + ")",
                                             xs, ys, "commit order index", metric));
            try {
                const stats::TrendSummary t = stats::trend_summary(ys);
                write_csv_row(trends, {project, metric, std::to_string(t.n), format_number(t.spearman_rho),
                                       format_number(t.mann_kendall_s), format_number(t.mann_kendall_variance),
                                       format_number(t.mann_kendall_z), format_number(t.mann_kendall_p),
                                       std::string(stats::to_string(t.direction)), t.significant ? "true" : "false",
                                       format_number(t.min), format_number(t.max), format_number(t.mean),
                                       format_number(t.median)});
                text << "  " << metric << ": " << stats::to_string(t.direction) << " (S = "
                     << format_number(t.mann_kendall_s) << ", p = " << format_number(t.mann_kendall_p)
                     << ", rho = " << format_number(t.spearman_rho) << ")\n";
                r.summary.push_back("trend [" + project + "] " + metric + ": " +
                                    std::string(stats::to_string(t.direction)));
            } catch (const Error& e) {
                record_error(r, "trend " + metric + " [" + project + "]", e);
                text << "  " << metric << ": not analyzed (" << e.what() << ")\n";
            }
        }

        const auto rep = stats::reuse_defect_cooccurrence(project_rows, c.aggregation);
        write_cooccurrence_rows(cooc, project, rep);
        for (const stats::ReviewCandidate& cand : rep.candidates) {
            std::string ids;
            for (const std::string& id : cand.bug_ids) ids += (ids.empty() ? "" : ";") + id;
            write_csv_row(candidates, {cand.project, cand.commit, format_number(cand.reuse_delta[0]),
                                       format_number(cand.reuse_delta[1]), format_number(cand.reuse_delta[2]), ids});
        }
        text << "  bug-inducing rows with any reuse change: " << rep.any.inducing_with_variation << " of "
             << rep.any.inducing_with_variation + rep.any.inducing_without_variation << "\n";
    }
    if (groups.size() > 1) write_cooccurrence_rows(cooc, "all", stats::reuse_defect_cooccurrence(rows, c.aggregation));
    if (groups.empty()) warn(r.diagnostics, "the panel has no rows; nothing to report");

    write_artifact(c.output_dir, "report/trends.csv", trends.str());
    write_artifact(c.output_dir, "report/cooccurrence.csv", cooc.str());
    write_artifact(c.output_dir, "report/review_candidates.csv", candidates.str());
    write_artifact(c.output_dir, "report/report.txt", text.str());
    return r;
}

CommandResult cmd_fit_and_report(const RunConfig& c) {
    CommandResult r = cmd_fit(c);
    merge(r, cmd_report(c));
    return r;
}

CommandResult cmd_all(const RunConfig& c) {
    CommandResult r = cmd_mine(c);
    validate(c, Command::Fit);
    merge(r, cmd_fit_and_report(c));
    return r;
}

std::vector<PanelRow> synthetic_panel(std::size_t n, std::uint64_t seed, SyntheticTruth* truth) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng)); };
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Rows: decrease, stable (reference), increase. Columns: intercept and
    // the three reuse sums.
    const double beta[3][4] = {{-0.4, 0.05, -0.04, 0.06}, {0, 0, 0, 0}, {-0.6, -0.03, 0.05, 0.04}};
    const std::array<std::pair<int, int>, kMetricCount> ranges = {
        {{0, 40}, {0, 30}, {0, 20}, {20, 120}, {0, 40}, {1000, 9000}, {0, 500}, {100, 900}, {200, 2000}, {50, 400}}};

    if (truth) {
        truth->categories = {"decrease", "stable", "increase"};
        truth->terms = {"(intercept)"};
        for (std::string_view m : kMetricNames) truth->terms.emplace_back(m);
        truth->terms.emplace_back("churn");
        truth->coefficients.assign(3, std::vector<double>(truth->terms.size(), 0.0));
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t t = 0; t < 4; ++t) truth->coefficients[k][t] = beta[k][t];
        }
    }

    auto commit_name = [](std::size_t i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "synthetic%08zu", i);
        return std::string(buf);
    };

    std::vector<PanelRow> rows;
    rows.reserve(n);
    double prev_count = uniform(20, 60);
    MetricArray prev_sum{};
    for (std::size_t m = 0; m < kMetricCount; ++m) prev_sum[m] = uniform(ranges[m].first, ranges[m].second);

    for (std::size_t i = 0; i < n; ++i) {
        PanelRow r;
        r.project = "synthetic";
        r.from_commit = commit_name(i);
        r.to_commit = commit_name(i + 1);
        r.from_index = i;
        r.to_index = i + 1;
        r.timestamp = 1600000000 + static_cast<std::int64_t>(i) * 3600;
        const double count = uniform(20, 60);
        r.class_count = static_cast<std::size_t>(count);
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            r.sum[m] = uniform(ranges[m].first, ranges[m].second);
            r.mean[m] = r.sum[m] / count;
            r.sum_delta[m] = r.sum[m] - prev_sum[m];
            r.mean_delta[m] = r.mean[m] - prev_sum[m] / prev_count;
        }
        prev_sum = r.sum;
        prev_count = count;
        r.lines_added = static_cast<std::size_t>(uniform(0, 300));
        r.lines_deleted = static_cast<std::size_t>(uniform(0, 200));
        r.churn = r.lines_added + r.lines_deleted;

        double eta[3];
        double total = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            eta[k] = std::exp(beta[k][0] + beta[k][1] * r.sum[0] + beta[k][2] * r.sum[1] + beta[k][3] * r.sum[2]);
            total += eta[k];
        }
        const double u = unit(rng) * total;
        const std::size_t label = u < eta[0] ? 0 : (u < eta[0] + eta[1] ? 1 : 2);

        r.active_bugs_from = static_cast<std::size_t>(uniform(1, 6));
        if (label == 0) {
            r.label = BugDeltaLabel::Decrease;
            r.active_bugs_to = r.active_bugs_from - 1;
        } else if (label == 1) {
            r.label = BugDeltaLabel::Stable;
            r.active_bugs_to = r.active_bugs_from;
        } else {
            r.label = BugDeltaLabel::Increase;
            r.active_bugs_to = r.active_bugs_from + 1;
            r.inducing_bug_ids = {"SYN-" + std::to_string(i + 1)};
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

CommandResult cmd_synth(const RunConfig& c) {
    CommandResult r;
    SyntheticTruth truth;
    auto rows = synthetic_panel(c.synth_rows, c.seed, &truth);
    if (!c.project.empty()) {
        for (PanelRow& row : rows) row.project = c.project;
    }
    std::ostringstream csv;
    write_panel_csv(csv, rows);
    write_artifact(c.output_dir, "panel.csv", csv.str());

    ordered_json j;
    j["seed"] = c.seed;
    j["rows"] = rows.size();
    j["aggregation"] = "sum";
    j["predictor_form"] = "levels";
    j["reference"] = "stable";
    j["terms"] = truth.terms;
    ordered_json coef = ordered_json::array();
    for (std::size_t k = 0; k < truth.categories.size(); ++k) {
        coef.push_back({{"name", truth.categories[k]}, {"estimates", truth.coefficients[k]}});
    }
    j["coefficients"] = coef;
    write_artifact(c.output_dir, "synth_truth.json", j.dump(2) + "\n");
    r.summary.push_back("synth: " + std::to_string(rows.size()) + " panel rows (seed " + std::to_string(c.seed) + ")");
    return r;
}

CommandResult run_command(Command command, const RunConfig& config) {
    validate(config, command);
    CommandResult r;
    switch (command) {
    case Command::Scan:
        r = cmd_scan(config);
        break;
    case Command::Mine:
        r = cmd_mine(config);
        break;
    case Command::Fit:
        r = cmd_fit(config);
        break;
    case Command::Report:
        r = cmd_report(config);
        break;
    case Command::All:
        r = cmd_all(config);
        break;
    case Command::Synth:
        r = cmd_synth(config);
        break;
    }
    std::ostringstream log;
    for (const Diagnostic& d : r.diagnostics) log << level_name(d.level) << ": " << d.message << "\n";
    write_artifact(config.output_dir, "logs/" + std::string(to_string(command)) + ".log", log.str());
    write_manifest(config.output_dir, to_string(command), to_json(config));
    return r;
}

} // namespace reusemine::app
