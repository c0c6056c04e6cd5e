#include "reusemine/history.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "reusemine/csv.hpp"
#include "reusemine/errors.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine {

namespace {

bool is_java_path(std::string_view path) {
    return path.size() > 5 && path.substr(path.size() - 5) == ".java";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string short_id(const std::string& id) { return id.substr(0, 12); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string format_integer(double value) {
    return std::to_string(static_cast<long long>(value));
}

// Rounds to the six significant digits used in text output, so JSON and
// CSV carry the same values.
double rounded(double value) {
    return parse_number(format_number(value), "value");
}

} // namespace

// ---- commits ------------------------------------------------------------

std::vector<CommitRecord> walk_history(const GitRepository& repo, const std::string& branch,
                                       const HistoryLimits& limits) {
    const auto head = repo.resolve(branch);
    if (!head) {
        if (!repo.has_commits()) throw EmptyHistory("repository '" + repo.path() + "' has no commits");
        throw RepoAccessError("branch '" + branch + "' not found in '" + repo.path() + "'");
    }
    std::optional<std::string> since;
    if (limits.since) {
        since = repo.resolve(*limits.since);
        if (!since) throw UnknownCommit("range start '" + *limits.since + "' is not a commit of '" + repo.path() + "'");
    }

    std::vector<RawCommit> raw = repo.first_parent_log(*head, since);
    if (limits.last && raw.size() > *limits.last) {
        raw.erase(raw.begin(), raw.end() - static_cast<std::ptrdiff_t>(*limits.last));
    }
    if (raw.empty()) throw EmptyHistory("no commits to analyze on '" + branch + "'");

    std::vector<CommitRecord> records;
    records.reserve(raw.size());
    for (RawCommit& c : raw) {
        CommitRecord r;
        r.commit_id = std::move(c.id);
        r.order_index = records.size();
        r.timestamp = c.timestamp;
        for (const FileDelta& d : c.deltas) {
            r.files_changed.push_back(d.path);
            r.lines_added += d.added;
            r.lines_deleted += d.deleted;
        }
        r.deltas = std::move(c.deltas);
        records.push_back(std::move(r));
    }
    return records;
}

std::size_t compute_churn(const CommitRecord& record) {
    std::size_t churn = 0;
    for (const FileDelta& d : record.deltas) {
        if (is_java_path(d.path)) churn += d.added + d.deleted;
    }
    return churn;
}

// ---- bug ledger -----------------------------------------------------------

BugLedger parse_bug_ledger(std::string_view csv_text, const std::string& source_name) {
    std::vector<CsvRow> rows;
    try {
        rows = parse_csv(csv_text, source_name);
    } catch (const ConfigError& e) {
        throw LedgerFormatError(e.what());
    }
    if (rows.empty()) throw LedgerFormatError(source_name + ": missing header row");
    const CsvRow& header = rows.front();
    const CsvRow expected{"bug_id", "introducing_commit", "fixing_commit"};
    CsvRow trimmed;
    for (const std::string& h : header) trimmed.push_back(trim(h));
    if (trimmed != expected) {
        throw LedgerFormatError(source_name + ": header must be 'bug_id,introducing_commit,fixing_commit'");
    }

    BugLedger ledger;
    std::set<std::string> ids;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& row = rows[i];
        const std::string where = source_name + ": row " + std::to_string(i + 1);
        if (row.size() != 3) {
            throw LedgerFormatError(where + ": expected 3 fields, found " + std::to_string(row.size()));
        }
        BugEntry e;
        e.bug_id = trim(row[0]);
        if (e.bug_id.empty()) throw LedgerFormatError(where + ": empty bug_id");
        const std::string intro = trim(row[1]);
        if (!intro.empty()) e.introducing_commit = intro;
        e.fixing_commit = trim(row[2]);
        if (e.fixing_commit.empty()) throw LedgerFormatError(where + ": bug '" + e.bug_id + "' has no fixing_commit");
        if (!ids.insert(e.bug_id).second) throw LedgerFormatError(where + ": duplicate bug '" + e.bug_id + "'");
        ledger.entries.push_back(std::move(e));
    }
    return ledger;
}

BugLedger load_bug_ledger(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const ConfigError& e) {
        throw LedgerFormatError(e.what());
    }
    return parse_bug_ledger(text, path);
}

std::vector<std::string> load_exclusion_list(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<std::string> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) entries.push_back(line);
        pos = end + 1;
    }
    return entries;
}

BugLedger apply_exclusions(const BugLedger& ledger, const std::vector<std::string>& excluded) {
    auto matches_commit = [](const std::string& commit, const std::string& entry) {
        return entry.size() >= 4 && (commit.starts_with(entry) || entry.starts_with(commit));
    };
    BugLedger out;
    for (const BugEntry& e : ledger.entries) {
        const bool drop = std::any_of(excluded.begin(), excluded.end(), [&](const std::string& x) {
            return x == e.bug_id || (e.introducing_commit && matches_commit(*e.introducing_commit, x));
        });
        if (!drop) out.entries.push_back(e);
    }
    return out;
}

ActiveBugIndex::ActiveBugIndex(const BugLedger& ledger, const std::vector<CommitRecord>& commits) {
    for (const CommitRecord& c : commits) order_of_[c.commit_id] = c.order_index;

    auto locate = [&](const std::string& ref, const BugEntry& bug, std::string_view role) -> std::size_t {
        if (auto it = order_of_.find(ref); it != order_of_.end()) return it->second;
        std::optional<std::size_t> found;
        if (ref.size() >= 4) {
            for (const CommitRecord& c : commits) {
                if (!c.commit_id.starts_with(ref)) continue;
                if (found) {
                    throw LedgerFormatError("bug '" + bug.bug_id + "': " + std::string(role) + " commit '" + ref +
                                            "' is ambiguous");
                }
                found = c.order_index;
            }
        }
        if (!found) {
            throw LedgerFormatError("bug '" + bug.bug_id + "': " + std::string(role) + " commit '" + ref +
                                    "' is not in the analyzed sequence");
        }
        return *found;
    };

    for (const BugEntry& bug : ledger.entries) {
        Interval iv;
        iv.bug_id = bug.bug_id;
        iv.fixed = locate(bug.fixing_commit, bug, "fixing");
        if (bug.introducing_commit) {
            iv.introduced = locate(*bug.introducing_commit, bug, "introducing");
            if (*iv.introduced >= iv.fixed) {
                throw LedgerFormatError("bug '" + bug.bug_id + "': introducing commit does not precede fixing commit");
            }
        }
        intervals_.push_back(std::move(iv));
    }
}

std::size_t ActiveBugIndex::active_at(std::size_t order_index) const {
    std::size_t n = 0;
    for (const Interval& iv : intervals_) {
        const std::size_t start = iv.introduced.value_or(0);
        if (start <= order_index && order_index < iv.fixed) ++n;
    }
    return n;
}

std::size_t ActiveBugIndex::active_bug_count(const CommitRecord& commit) const {
    auto it = order_of_.find(commit.commit_id);
    if (it == order_of_.end() || it->second != commit.order_index) {
        throw UnknownCommit("commit '" + commit.commit_id + "' is not part of the analyzed sequence");
    }
    return active_at(commit.order_index);
}

std::vector<std::string> ActiveBugIndex::introduced_at(std::size_t order_index) const {
    std::vector<std::string> ids;
    for (const Interval& iv : intervals_) {
        if (iv.introduced && *iv.introduced == order_index) ids.push_back(iv.bug_id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::size_t active_bug_count(const ActiveBugIndex& ledger, const CommitRecord& commit) {
    return ledger.active_bug_count(commit);
}

std::string_view to_string(BugDeltaLabel label) {
    switch (label) {
    case BugDeltaLabel::Decrease:
        return "decrease";
    case BugDeltaLabel::Stable:
        return "stable";
    case BugDeltaLabel::Increase:
        return "increase";
    }
    return "stable";
}

std::optional<BugDeltaLabel> bug_delta_label_from_string(std::string_view text) {
    if (text == "decrease") return BugDeltaLabel::Decrease;
    if (text == "stable") return BugDeltaLabel::Stable;
    if (text == "increase") return BugDeltaLabel::Increase;
    return std::nullopt;
}

BugDeltaLabel classify_bug_delta(std::size_t n_from, std::size_t n_to) {
    if (n_to == n_from) return BugDeltaLabel::Stable;
    return n_to > n_from ? BugDeltaLabel::Increase : BugDeltaLabel::Decrease;
}

// ---- snapshots ------------------------------------------------------------

SnapshotBuilder::SnapshotBuilder(const GitRepository& repo, SnapshotOptions options)
    : repo_(repo), options_(std::move(options)) {}

std::vector<CompilationUnitModel> SnapshotBuilder::load_units(const std::string& commit_id, DiagnosticLog& log,
                                                              bool strict, std::size_t& failures) {
    const std::vector<TreeBlob> blobs = repo_.list_tree(commit_id, ".java");
    std::vector<std::string> missing;
    for (const TreeBlob& b : blobs) {
        if (!cache_.count(b.blob_id)) missing.push_back(b.blob_id);
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    const auto contents = repo_.read_blobs(missing);

    std::vector<CompilationUnitModel> units;
    failures = 0;
    for (const TreeBlob& b : blobs) {
        auto it = cache_.find(b.blob_id);
        if (it == cache_.end()) {
            CachedUnit entry;
            auto text = contents.find(b.blob_id);
            if (text == contents.end()) {
                entry.error.emplace(b.path, 0, 0, "blob " + b.blob_id + " could not be read");
            } else {
                try {
                    entry.model = parse_compilation_unit(text->second, b.path);
                } catch (const ParseError& e) {
                    entry.error = e;
                }
            }
            if (entry.error && !strict) {
                warn(log, b.path + " (blob " + short_id(b.blob_id) + "): skipped, " +
                              std::to_string(entry.error->line()) + ":" + std::to_string(entry.error->column()) +
                              ": " + entry.error->reason());
            }
            it = cache_.emplace(b.blob_id, std::move(entry)).first;
        }
        if (it->second.error) {
            if (strict) {
                const ParseError& e = *it->second.error;
                throw ParseError(b.path, e.line(), e.column(), e.reason());
            }
            ++failures;
            continue;
        }
        CompilationUnitModel unit = *it->second.model;
        unit.path = b.path;
        units.push_back(std::move(unit));
    }
    return units;
}

std::optional<SnapshotAggregate> SnapshotBuilder::aggregate_at(const CommitRecord& commit, DiagnosticLog& log) {
    try {
        std::size_t failures = 0;
        const auto units = load_units(commit.commit_id, log, false, failures);
        if (failures > 0 && options_.parse_failures == ParseFailurePolicy::DropSnapshot) {
            warn(log, "commit " + short_id(commit.commit_id) + ": snapshot dropped, " + std::to_string(failures) +
                          " file(s) failed to parse");
            return std::nullopt;
        }
        const TypeGraph graph = build_type_graph(units);
        return aggregate(compute_snapshot_metrics(graph, options_.metrics));
    } catch (const CycleError& e) {
        warn(log, "commit " + short_id(commit.commit_id) + ": snapshot unavailable, " + e.what());
    } catch (const DuplicateType& e) {
        warn(log, "commit " + short_id(commit.commit_id) + ": snapshot unavailable, " + e.what());
    }
    return std::nullopt;
}

std::vector<ClassMetricsRecord> SnapshotBuilder::classes_at(const std::string& commit_id, DiagnosticLog& log) {
    std::size_t failures = 0;
    const auto units = load_units(commit_id, log, true, failures);
    return compute_snapshot_metrics(build_type_graph(units), options_.metrics);
}

// ---- panel ----------------------------------------------------------------

std::vector<PanelRow> assemble_panel(const std::string& project, const std::vector<CommitRecord>& commits,
                                     const std::vector<std::optional<SnapshotAggregate>>& snapshots,
                                     const ActiveBugIndex& ledger, DiagnosticLog& log) {
    if (snapshots.size() != commits.size()) {
        throw Error("assemble_panel: " + std::to_string(snapshots.size()) + " snapshots for " +
                    std::to_string(commits.size()) + " commits");
    }
    std::vector<PanelRow> rows;
    for (std::size_t i = 1; i < commits.size(); ++i) {
        const CommitRecord& from = commits[i - 1];
        const CommitRecord& to = commits[i];
        if (!snapshots[i - 1] || !snapshots[i]) {
            const CommitRecord& missing = snapshots[i - 1] ? to : from;
            warn(log, "SnapshotMissing: row " + short_id(from.commit_id) + " -> " + short_id(to.commit_id) +
                          " skipped, no snapshot for " + short_id(missing.commit_id));
            continue;
        }
        const SnapshotAggregate& a = *snapshots[i - 1];
        const SnapshotAggregate& b = *snapshots[i];

        PanelRow r;
        r.project = project;
        r.from_commit = from.commit_id;
        r.to_commit = to.commit_id;
        r.from_index = from.order_index;
        r.to_index = to.order_index;
        r.timestamp = to.timestamp;
        r.class_count = b.class_count;
        r.sum = b.sum;
        r.mean = b.mean;
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            r.sum_delta[m] = b.sum[m] - a.sum[m];
            r.mean_delta[m] = b.mean[m] - a.mean[m];
        }
        for (const FileDelta& d : to.deltas) {
            if (!is_java_path(d.path)) continue;
            r.lines_added += d.added;
            r.lines_deleted += d.deleted;
        }
        r.churn = compute_churn(to);
        r.active_bugs_from = ledger.active_bug_count(from);
        r.active_bugs_to = ledger.active_bug_count(to);
        r.label = classify_bug_delta(r.active_bugs_from, r.active_bugs_to);
        r.inducing_bug_ids = ledger.introduced_at(to.order_index);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> panel_columns() {
    std::vector<std::string> cols{"project", "from_commit", "to_commit", "from_index", "to_index", "timestamp",
                                  "class_count"};
    for (std::string_view m : kMetricNames) {
        const std::string name(m);
        cols.push_back(name + "_sum");
        cols.push_back(name + "_mean");
        cols.push_back(name + "_delta_sum");
        cols.push_back(name + "_delta_mean");
    }
    for (const char* c : {"java_lines_added", "java_lines_deleted", "churn", "active_bugs_from", "active_bugs_to",
                          "bug_delta", "label", "inducing_bug_ids"}) {
        cols.push_back(c);
    }
    return cols;
}

namespace {

CsvRow panel_cells(const PanelRow& r) {
    CsvRow row{r.project,
               r.from_commit,
               r.to_commit,
               std::to_string(r.from_index),
               std::to_string(r.to_index),
               std::to_string(r.timestamp),
               std::to_string(r.class_count)};
    for (std::size_t m = 0; m < kMetricCount; ++m) {
        row.push_back(format_integer(r.sum[m]));
        row.push_back(format_number(r.mean[m]));
        row.push_back(format_integer(r.sum_delta[m]));
        row.push_back(format_number(r.mean_delta[m]));
    }
    const long long bug_delta = static_cast<long long>(r.active_bugs_to) - static_cast<long long>(r.active_bugs_from);
    row.push_back(std::to_string(r.lines_added));
    row.push_back(std::to_string(r.lines_deleted));
    row.push_back(std::to_string(r.churn));
    row.push_back(std::to_string(r.active_bugs_from));
    row.push_back(std::to_string(r.active_bugs_to));
    row.push_back(std::to_string(bug_delta));
    row.push_back(std::string(to_string(r.label)));
    row.push_back(join(r.inducing_bug_ids, ";"));
    return row;
}

} // namespace

void write_panel_csv(std::ostream& out, const std::vector<PanelRow>& rows) {
    write_csv_row(out, panel_columns());
    for (const PanelRow& r : rows) write_csv_row(out, panel_cells(r));
}

void write_panel_jsonl(std::ostream& out, const std::vector<PanelRow>& rows) {
    for (const PanelRow& r : rows) {
        nlohmann::ordered_json j;
        j["project"] = r.project;
        j["from_commit"] = r.from_commit;
        j["to_commit"] = r.to_commit;
        j["from_index"] = r.from_index;
        j["to_index"] = r.to_index;
        j["timestamp"] = r.timestamp;
        j["class_count"] = r.class_count;
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const std::string name(kMetricNames[m]);
            j[name + "_sum"] = static_cast<long long>(r.sum[m]);
            j[name + "_mean"] = rounded(r.mean[m]);
            j[name + "_delta_sum"] = static_cast<long long>(r.sum_delta[m]);
            j[name + "_delta_mean"] = rounded(r.mean_delta[m]);
        }
        j["java_lines_added"] = r.lines_added;
        j["java_lines_deleted"] = r.lines_deleted;
        j["churn"] = r.churn;
        j["active_bugs_from"] = r.active_bugs_from;
        j["active_bugs_to"] = r.active_bugs_to;
        j["bug_delta"] = static_cast<long long>(r.active_bugs_to) - static_cast<long long>(r.active_bugs_from);
        j["label"] = std::string(to_string(r.label));
        j["inducing_bug_ids"] = r.inducing_bug_ids;
        out << j.dump() << '\n';
    }
}

std::vector<PanelRow> read_panel_csv(std::istream& in, const std::string& source_name) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::vector<CsvRow> rows = parse_csv(text, source_name);
    if (rows.empty()) throw ConfigError(source_name + ": empty panel file");

    const std::vector<std::string> expected = panel_columns();
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < rows.front().size(); ++i) col[rows.front()[i]] = i;
    for (const std::string& c : expected) {
        if (!col.count(c)) throw ConfigError(source_name + ": missing column '" + c + "'");
    }

    std::vector<PanelRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& row = rows[i];
        if (row.size() != rows.front().size()) {
            throw ConfigError(source_name + ": row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                              " fields, expected " + std::to_string(rows.front().size()));
        }
        auto cell = [&](const std::string& name) -> const std::string& { return row[col.at(name)]; };
        auto num = [&](const std::string& name) { return parse_number(cell(name), source_name + " column " + name); };
        auto count = [&](const std::string& name) { return static_cast<std::size_t>(num(name)); };

        PanelRow r;
        r.project = cell("project");
        r.from_commit = cell("from_commit");
        r.to_commit = cell("to_commit");
        r.from_index = count("from_index");
        r.to_index = count("to_index");
        r.timestamp = static_cast<std::int64_t>(num("timestamp"));
        r.class_count = count("class_count");
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const std::string name(kMetricNames[m]);
            r.sum[m] = num(name + "_sum");
            r.mean[m] = num(name + "_mean");
            r.sum_delta[m] = num(name + "_delta_sum");
            r.mean_delta[m] = num(name + "_delta_mean");
        }
        r.lines_added = count("java_lines_added");
        r.lines_deleted = count("java_lines_deleted");
        r.churn = count("churn");
        r.active_bugs_from = count("active_bugs_from");
        r.active_bugs_to = count("active_bugs_to");
        const auto label = bug_delta_label_from_string(cell("label"));
        if (!label) throw ConfigError(source_name + ": row " + std::to_string(i + 1) + ": bad label '" + cell("label") + "'");
        r.label = *label;
        const std::string& ids = cell("inducing_bug_ids");
        std::size_t pos = 0;
        while (pos < ids.size()) {
            std::size_t end = ids.find(';', pos);
            if (end == std::string::npos) end = ids.size();
            if (end > pos) r.inducing_bug_ids.push_back(ids.substr(pos, end - pos));
            pos = end + 1;
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_series_csv(std::ostream& out, const std::vector<CommitRecord>& commits,
                      const std::vector<std::optional<SnapshotAggregate>>& snapshots, const ActiveBugIndex& ledger) {
    CsvRow header{"commit_id", "order_index", "timestamp", "snapshot", "class_count"};
    for (std::string_view m : kMetricNames) {
        header.push_back(std::string(m) + "_sum");
        header.push_back(std::string(m) + "_mean");
    }
    for (const char* c : {"java_lines_added", "java_lines_deleted", "churn", "active_bugs"}) header.push_back(c);
    write_csv_row(out, header);

    for (std::size_t i = 0; i < commits.size(); ++i) {
        const CommitRecord& c = commits[i];
        const auto& snap = i < snapshots.size() ? snapshots[i] : std::nullopt;
        CsvRow row{c.commit_id, std::to_string(c.order_index), std::to_string(c.timestamp), snap ? "ok" : "missing",
                   snap ? std::to_string(snap->class_count) : ""};
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            row.push_back(snap ? format_integer(snap->sum[m]) : "");
            row.push_back(snap ? format_number(snap->mean[m]) : "");
        }
        std::size_t added = 0;
        std::size_t deleted = 0;
        for (const FileDelta& d : c.deltas) {
            if (!is_java_path(d.path)) continue;
            added += d.added;
            deleted += d.deleted;
        }
        row.push_back(std::to_string(added));
        row.push_back(std::to_string(deleted));
        row.push_back(std::to_string(compute_churn(c)));
        row.push_back(std::to_string(ledger.active_at(c.order_index)));
        write_csv_row(out, row);
    }
}

} // namespace reusemine
