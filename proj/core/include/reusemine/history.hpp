#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reusemine/class_metrics.hpp"
#include "reusemine/diagnostics.hpp"
#include "reusemine/errors.hpp"
#include "reusemine/git_repository.hpp"

namespace reusemine {

struct CommitRecord {
    std::string commit_id;
    std::size_t order_index = 0;
    std::int64_t timestamp = 0;
    std::vector<std::string> files_changed;
    std::size_t lines_added = 0;
    std::size_t lines_deleted = 0;
    std::vector<FileDelta> deltas;  // per-file split of the two totals

    bool operator==(const CommitRecord&) const = default;
};

struct HistoryLimits {
    // Exclusive lower bound: commits reachable from it are left out.
    std::optional<std::string> since;
    // Keep only the most recent `last` commits of the walk.
    std::optional<std::size_t> last;

    bool operator==(const HistoryLimits&) const = default;
};

// First-parent history of `branch`, oldest first, with gap-free order
// indices starting at 0. Throws RepoAccessError or EmptyHistory.
std::vector<CommitRecord> walk_history(const GitRepository& repo, const std::string& branch,
                                       const HistoryLimits& limits = {});

// Lines added plus deleted in `.java` files.
std::size_t compute_churn(const CommitRecord& record);

// ---- bug ledger -------------------------------------------------------------

struct BugEntry {
    std::string bug_id;
    std::optional<std::string> introducing_commit;
    std::string fixing_commit;

    bool operator==(const BugEntry&) const = default;
};

struct BugLedger {
    std::vector<BugEntry> entries;

    bool operator==(const BugLedger&) const = default;
};

// CSV with header `bug_id,introducing_commit,fixing_commit`. Throws
// LedgerFormatError.
BugLedger parse_bug_ledger(std::string_view csv_text, const std::string& source_name = "ledger");
BugLedger load_bug_ledger(const std::string& path);

// One entry per non-empty line; `#` starts a comment. An entry drops every
// bug whose id or introducing commit matches it (commit ids by prefix).
std::vector<std::string> load_exclusion_list(const std::string& path);
BugLedger apply_exclusions(const BugLedger& ledger, const std::vector<std::string>& excluded);

// A ledger bound to an analyzed commit sequence.
class ActiveBugIndex {
public:
    struct Interval {
        std::string bug_id;
        std::optional<std::size_t> introduced;  // order index; absent = active from the start
        std::size_t fixed = 0;                  // order index
    };

    // Commit ids in the ledger may be abbreviated. Throws LedgerFormatError
    // (naming the bug) when a commit is unknown or ambiguous, or when the
    // introducing commit does not precede the fixing commit.
    ActiveBugIndex(const BugLedger& ledger, const std::vector<CommitRecord>& commits);

    // Bugs with introduced <= order < fixed. Throws UnknownCommit.
    std::size_t active_bug_count(const CommitRecord& commit) const;
    std::size_t active_at(std::size_t order_index) const;

    // Bugs whose introducing commit sits at this order index, sorted.
    std::vector<std::string> introduced_at(std::size_t order_index) const;

    const std::vector<Interval>& intervals() const { return intervals_; }

private:
    std::vector<Interval> intervals_;
    std::map<std::string, std::size_t> order_of_;
};

std::size_t active_bug_count(const ActiveBugIndex& ledger, const CommitRecord& commit);

enum class BugDeltaLabel { Decrease, Stable, Increase };

std::string_view to_string(BugDeltaLabel label);
std::optional<BugDeltaLabel> bug_delta_label_from_string(std::string_view text);

BugDeltaLabel classify_bug_delta(std::size_t n_from, std::size_t n_to);

// ---- snapshots and panel --------------------------------------------------

enum class ParseFailurePolicy {
    SkipFile,      // drop the file, keep the snapshot
    DropSnapshot   // treat the whole snapshot as missing
};

struct SnapshotOptions {
    MetricsOptions metrics;
    ParseFailurePolicy parse_failures = ParseFailurePolicy::SkipFile;
};

// Metric snapshots of many commits of one repository. Parsed units are
// cached by blob id, so unchanged files are parsed once.
class SnapshotBuilder {
public:
    SnapshotBuilder(const GitRepository& repo, SnapshotOptions options);

    // Aggregated metrics at `commit`; nullopt (with a diagnostic) when the
    // snapshot cannot be built.
    std::optional<SnapshotAggregate> aggregate_at(const CommitRecord& commit, DiagnosticLog& log);

    // Per-class records at `commit`. Throws on any failure.
    std::vector<ClassMetricsRecord> classes_at(const std::string& commit_id, DiagnosticLog& log);

    std::size_t cached_units() const { return cache_.size(); }

private:
    struct CachedUnit {
        std::optional<CompilationUnitModel> model;
        std::optional<ParseError> error;
    };

    // Parsed units of the commit's tree; `failures` counts unparseable files.
    std::vector<CompilationUnitModel> load_units(const std::string& commit_id, DiagnosticLog& log, bool strict,
                                                 std::size_t& failures);

    const GitRepository& repo_;
    SnapshotOptions options_;
    std::map<std::string, CachedUnit> cache_;  // by blob id
};

struct PanelRow {
    std::string project;
    std::string from_commit;
    std::string to_commit;
    std::size_t from_index = 0;
    std::size_t to_index = 0;
    std::int64_t timestamp = 0;  // of to_commit
    std::size_t class_count = 0;
    MetricArray sum{};          // levels at to_commit
    MetricArray mean{};
    MetricArray sum_delta{};    // to - from
    MetricArray mean_delta{};
    std::size_t lines_added = 0;
    std::size_t lines_deleted = 0;
    std::size_t churn = 0;
    std::size_t active_bugs_from = 0;
    std::size_t active_bugs_to = 0;
    BugDeltaLabel label = BugDeltaLabel::Stable;
    // Bugs introduced by to_commit, sorted.
    std::vector<std::string> inducing_bug_ids;

    bool operator==(const PanelRow&) const = default;
};

// One row per consecutive commit pair. `snapshots` is parallel to
// `commits`; a pair touching a missing snapshot yields a diagnostic instead
// of a row.
std::vector<PanelRow> assemble_panel(const std::string& project, const std::vector<CommitRecord>& commits,
                                     const std::vector<std::optional<SnapshotAggregate>>& snapshots,
                                     const ActiveBugIndex& ledger, DiagnosticLog& log);

// Column names of the panel CSV in output order.
std::vector<std::string> panel_columns();

void write_panel_csv(std::ostream& out, const std::vector<PanelRow>& rows);
void write_panel_jsonl(std::ostream& out, const std::vector<PanelRow>& rows);
// Reads a file produced by write_panel_csv. Throws ConfigError on a
// malformed file.
std::vector<PanelRow> read_panel_csv(std::istream& in, const std::string& source_name = "panel");

// Per-commit series: levels, churn and active bugs for every analyzed
// commit, including those without a snapshot.
void write_series_csv(std::ostream& out, const std::vector<CommitRecord>& commits,
                      const std::vector<std::optional<SnapshotAggregate>>& snapshots, const ActiveBugIndex& ledger);

} // namespace reusemine
