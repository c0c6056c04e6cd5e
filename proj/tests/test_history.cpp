#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include "reusemine/history.hpp"
#include "reusemine/stats/cooccurrence.hpp"
#include "support/scripted_repo.hpp"

namespace reusemine::testing {
namespace {

using L = BugDeltaLabel;

class ScriptedHistory : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = std::make_unique<TempDir>("history");
        scenario_ = std::make_unique<MiningScenario>(build_mining_scenario(dir_->path()));
    }
    static void TearDownTestSuite() {
        scenario_.reset();
        dir_.reset();
    }

    static std::vector<PanelRow> mine(ParseFailurePolicy policy, DiagnosticLog& log) {
        GitRepository repo(dir_->path());
        const auto commits = walk_history(repo, "HEAD");
        const ActiveBugIndex bugs(parse_bug_ledger(scenario_->ledger_csv), commits);
        SnapshotBuilder builder(repo, SnapshotOptions{{}, policy});
        std::vector<std::optional<SnapshotAggregate>> snaps;
        for (const auto& c : commits) snaps.push_back(builder.aggregate_at(c, log));
        return assemble_panel("scripted", commits, snaps, bugs, log);
    }

    static inline std::unique_ptr<TempDir> dir_;
    static inline std::unique_ptr<MiningScenario> scenario_;
};

TEST_F(ScriptedHistory, WalkIsOldestFirstWithScriptedDiffSizes) {
    GitRepository repo(dir_->path());
    const auto commits = walk_history(repo, "main");
    ASSERT_EQ(commits.size(), 20u);
    for (std::size_t i = 0; i < commits.size(); ++i) {
        EXPECT_EQ(commits[i].commit_id, scenario_->commits[i]);
        EXPECT_EQ(commits[i].order_index, i);
        EXPECT_EQ(commits[i].timestamp, 1700000000 + 60 * static_cast<std::int64_t>(i));
        EXPECT_EQ(compute_churn(commits[i]), scenario_->java_added[i] + scenario_->java_deleted[i]) << i;
    }
    // Non-java files count toward the raw totals but not toward churn.
    EXPECT_EQ(commits[6].lines_added, 1u);
    EXPECT_EQ(compute_churn(commits[6]), 0u);
    EXPECT_EQ(commits[14].files_changed.size(), 2u);
}

TEST_F(ScriptedHistory, RangeLimits) {
    GitRepository repo(dir_->path());
    HistoryLimits since;
    since.since = scenario_->commits[14];
    const auto tail = walk_history(repo, "HEAD", since);
    ASSERT_EQ(tail.size(), 5u);
    EXPECT_EQ(tail.front().commit_id, scenario_->commits[15]);
    EXPECT_EQ(tail.front().order_index, 0u);

    HistoryLimits last;
    last.last = 3;
    const auto recent = walk_history(repo, "HEAD", last);
    ASSERT_EQ(recent.size(), 3u);
    EXPECT_EQ(recent.back().commit_id, scenario_->commits[19]);
    EXPECT_EQ(recent.front().order_index, 0u);

    HistoryLimits bogus;
    bogus.since = "0123456789abcdef0123456789abcdef01234567";
    EXPECT_THROW(walk_history(repo, "HEAD", bogus), UnknownCommit);
    EXPECT_THROW(walk_history(repo, "no-such-branch"), RepoAccessError);
}

TEST_F(ScriptedHistory, PanelRowsChurnAndLabels) {
    DiagnosticLog log;
    const auto rows = mine(ParseFailurePolicy::SkipFile, log);
    ASSERT_EQ(rows.size(), 19u);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        SCOPED_TRACE(k + 1);
        EXPECT_EQ(rows[k].from_index, k);
        EXPECT_EQ(rows[k].to_index, k + 1);
        EXPECT_EQ(rows[k].churn, scenario_->hand_churn[k]);
        EXPECT_EQ(rows[k].active_bugs_from, scenario_->hand_active[k]);
        EXPECT_EQ(rows[k].active_bugs_to, scenario_->hand_active[k + 1]);
        EXPECT_EQ(to_string(rows[k].label), scenario_->hand_labels[k]);
    }
    EXPECT_EQ(rows[2].inducing_bug_ids, std::vector<std::string>{"BUG-1"});
    EXPECT_EQ(rows[4].inducing_bug_ids, std::vector<std::string>{"BUG-2"});

    // One warning for the unparseable blob, which is parsed once.
    std::size_t skipped = 0;
    for (const auto& d : log) skipped += d.message.find("Broken.java") != std::string::npos;
    EXPECT_EQ(skipped, 1u);
}

TEST_F(ScriptedHistory, SnapshotLevels) {
    DiagnosticLog log;
    const auto rows = mine(ParseFailurePolicy::SkipFile, log);
    ASSERT_EQ(rows.size(), 19u);
    // Commit 3: Base, Engine, Worker, Shape, Circle. Worker reuses a() and
    // b(), Circle implements Shape and delegates to its engine.
    EXPECT_EQ(rows[2].class_count, 5u);
    EXPECT_EQ(rows[2].sum[0], 1.0);
    EXPECT_EQ(rows[2].sum[1], 2.0);
    EXPECT_EQ(rows[2].sum[2], 1.0);
    EXPECT_EQ(rows[2].sum_delta[0], 1.0);
    // Commit 8 adds the helper delegate.
    EXPECT_EQ(rows[7].sum[2], 2.0);
    EXPECT_EQ(rows[7].sum_delta[2], 1.0);
    // The broken file of commit 10 is skipped, so the class count holds.
    EXPECT_EQ(rows[9].class_count, rows[8].class_count);
    // Commit 14 adds Square, another Shape.
    EXPECT_EQ(rows[13].sum[0], 2.0);
    EXPECT_EQ(rows[13].class_count, rows[12].class_count + 1);
}

TEST_F(ScriptedHistory, DroppedSnapshotRemovesBothAdjacentRows) {
    DiagnosticLog log;
    const auto rows = mine(ParseFailurePolicy::DropSnapshot, log);
    ASSERT_EQ(rows.size(), 17u);
    for (const auto& r : rows) EXPECT_NE(r.to_index, 10u);
    for (const auto& r : rows) EXPECT_NE(r.from_index, 10u);
    std::size_t missing = 0;
    for (const auto& d : log) missing += d.message.starts_with("SnapshotMissing");
    EXPECT_EQ(missing, 2u);
}

TEST_F(ScriptedHistory, CooccurrenceCellsPartitionRows) {
    DiagnosticLog log;
    const auto rows = mine(ParseFailurePolicy::SkipFile, log);
    const auto report = stats::reuse_defect_cooccurrence(rows);
    EXPECT_EQ(report.rows, 19u);
    for (const auto& cells : report.per_metric) {
        EXPECT_EQ(cells.total(), 19u);
        EXPECT_EQ(cells.inducing_with_variation + cells.inducing_without_variation, 2u);
    }
    EXPECT_EQ(report.any.total(), 19u);
    EXPECT_EQ(report.all.total(), 19u);
    // Commit 3 changes spec and delegation; commit 5 changes impl.
    EXPECT_EQ(report.any.inducing_with_variation, 2u);
    EXPECT_EQ(report.per_metric[0].inducing_with_variation, 1u);
    EXPECT_EQ(report.candidates.size(), 2u);

    const auto via_ledger = stats::reuse_defect_cooccurrence(rows, parse_bug_ledger(scenario_->ledger_csv));
    EXPECT_EQ(via_ledger.any, report.any);
}

TEST_F(ScriptedHistory, PanelCsvRoundTripAndDeterminism) {
    DiagnosticLog log1, log2;
    const auto rows = mine(ParseFailurePolicy::SkipFile, log1);
    const auto again = mine(ParseFailurePolicy::SkipFile, log2);
    EXPECT_EQ(rows, again);
    EXPECT_EQ(log1, log2);

    std::ostringstream a, b;
    write_panel_csv(a, rows);
    write_panel_csv(b, again);
    EXPECT_EQ(a.str(), b.str());

    std::istringstream in(a.str());
    const auto back = read_panel_csv(in);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(back[i].to_commit, rows[i].to_commit);
        EXPECT_EQ(back[i].churn, rows[i].churn);
        EXPECT_EQ(back[i].label, rows[i].label);
        EXPECT_EQ(back[i].sum, rows[i].sum);
        EXPECT_EQ(back[i].inducing_bug_ids, rows[i].inducing_bug_ids);
    }
    std::ostringstream c;
    write_panel_csv(c, back);
    EXPECT_EQ(c.str(), a.str());
}

TEST_F(ScriptedHistory, LedgerCommitOutsideRangeNamesTheBug) {
    GitRepository repo(dir_->path());
    HistoryLimits limits;
    limits.since = scenario_->commits[9];
    const auto commits = walk_history(repo, "HEAD", limits);
    try {
        ActiveBugIndex idx(parse_bug_ledger(scenario_->ledger_csv), commits);
        FAIL() << "expected LedgerFormatError";
    } catch (const LedgerFormatError& e) {
        EXPECT_NE(std::string(e.what()).find("BUG-1"), std::string::npos) << e.what();
    }
}

TEST(History, MissingOrEmptyRepository) {
    TempDir plain("plain");
    EXPECT_THROW(GitRepository(plain.path()), RepoAccessError);
    EXPECT_THROW(GitRepository(plain / "absent"), RepoAccessError);

    TempDir empty("empty");
    git(empty.path(), "init -q");
    GitRepository repo(empty.path());
    EXPECT_THROW(walk_history(repo, "HEAD"), EmptyHistory);
}

CommitRecord record(const std::string& id, std::size_t order) {
    CommitRecord c;
    c.commit_id = id;
    c.order_index = order;
    return c;
}

std::vector<CommitRecord> sequence() {
    return {record("aaaa0000", 0), record("bbbb1111", 1), record("bbbb2222", 2), record("cccc3333", 3),
            record("dddd4444", 4)};
}

TEST(BugLedgerParsing, AcceptsQuotedFieldsAndEmptyIntroducing) {
    const auto ledger = parse_bug_ledger("bug_id,introducing_commit,fixing_commit\r\n\"B,1\",aaaa0000,cccc3333\r\nB2,,dddd\r\n");
    ASSERT_EQ(ledger.entries.size(), 2u);
    EXPECT_EQ(ledger.entries[0].bug_id, "B,1");
    EXPECT_EQ(ledger.entries[0].introducing_commit, std::optional<std::string>("aaaa0000"));
    EXPECT_FALSE(ledger.entries[1].introducing_commit.has_value());
    EXPECT_EQ(ledger.entries[1].fixing_commit, "dddd");
}

TEST(BugLedgerParsing, RejectsMalformedInput) {
    EXPECT_THROW(parse_bug_ledger(""), LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("id,intro,fix\n"), LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("bug_id,introducing_commit,fixing_commit\nB1,aaaa\n"), LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("bug_id,introducing_commit,fixing_commit\nB1,aaaa,\n"), LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("bug_id,introducing_commit,fixing_commit\n,aaaa,bbbb\n"), LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("bug_id,introducing_commit,fixing_commit\nB1,,bbbb\nB1,,cccc\n"),
                 LedgerFormatError);
    EXPECT_THROW(parse_bug_ledger("bug_id,introducing_commit,fixing_commit\nB1,\"aaaa,bbbb\n"), LedgerFormatError);
}

TEST(ActiveBugs, HalfOpenIntervals) {
    BugLedger ledger;
    ledger.entries.push_back({"B1", std::string("bbbb1111"), "dddd4444"});
    ledger.entries.push_back({"B2", std::nullopt, "bbbb2"});
    const auto commits = sequence();
    const ActiveBugIndex idx(ledger, commits);
    // B1 on [1, 4), B2 on [0, 2).
    const std::vector<std::size_t> expected = {1, 2, 1, 1, 0};
    for (std::size_t i = 0; i < commits.size(); ++i) EXPECT_EQ(active_bug_count(idx, commits[i]), expected[i]) << i;
    EXPECT_EQ(idx.introduced_at(1), std::vector<std::string>{"B1"});
    EXPECT_TRUE(idx.introduced_at(0).empty());
    EXPECT_THROW(idx.active_bug_count(record("eeee5555", 5)), UnknownCommit);
}

TEST(ActiveBugs, RejectsBadReferences) {
    const auto commits = sequence();
    auto one = [](std::optional<std::string> intro, std::string fix) {
        BugLedger l;
        l.entries.push_back({"B9", std::move(intro), std::move(fix)});
        return l;
    };
    EXPECT_THROW(ActiveBugIndex(one(std::nullopt, "bbbb"), commits), LedgerFormatError);  // ambiguous
    EXPECT_THROW(ActiveBugIndex(one(std::nullopt, "ffff"), commits), LedgerFormatError);  // unknown
    EXPECT_THROW(ActiveBugIndex(one(std::nullopt, "ddd"), commits), LedgerFormatError);   // prefix too short
    EXPECT_THROW(ActiveBugIndex(one(std::string("cccc3333"), "cccc3333"), commits), LedgerFormatError);
    EXPECT_THROW(ActiveBugIndex(one(std::string("dddd4444"), "aaaa0000"), commits), LedgerFormatError);
    EXPECT_NO_THROW(ActiveBugIndex(one(std::string("aaaa"), "dddd"), commits));
}

TEST(ActiveBugs, LabelsFollowCountDirection) {
    EXPECT_EQ(classify_bug_delta(2, 3), L::Increase);
    EXPECT_EQ(classify_bug_delta(3, 2), L::Decrease);
    EXPECT_EQ(classify_bug_delta(0, 0), L::Stable);
    EXPECT_EQ(bug_delta_label_from_string("increase"), L::Increase);
    EXPECT_FALSE(bug_delta_label_from_string("up").has_value());
}

TEST(Exclusions, DropByIdOrIntroducingPrefix) {
    TempDir dir("excl");
    write_file(dir / "exclude.txt", "# tangled fixes\nB2\n\nbbbb11  # trailing comment\nabc\n");
    const auto excluded = load_exclusion_list(dir / "exclude.txt");
    EXPECT_EQ(excluded, (std::vector<std::string>{"B2", "bbbb11", "abc"}));

    BugLedger ledger;
    ledger.entries.push_back({"B1", std::string("bbbb1111"), "dddd4444"});
    ledger.entries.push_back({"B2", std::nullopt, "bbbb2222"});
    ledger.entries.push_back({"B3", std::string("abcd0000"), "dddd4444"});
    const auto kept = apply_exclusions(ledger, excluded);
    // "abc" is too short to act as a commit prefix.
    ASSERT_EQ(kept.entries.size(), 1u);
    EXPECT_EQ(kept.entries[0].bug_id, "B3");
}

} // namespace
} // namespace reusemine::testing
