#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "reusemine/history.hpp"
#include "reusemine/stats/design.hpp"

namespace reusemine::stats {

// Panel rows split by whether the destination commit induced a bug and
// whether the reuse metric(s) changed. The four cells sum to the row count.
struct CooccurrenceCounts {
    std::size_t inducing_with_variation = 0;
    std::size_t inducing_without_variation = 0;
    std::size_t non_inducing_with_variation = 0;
    std::size_t non_inducing_without_variation = 0;

    std::size_t total() const {
        return inducing_with_variation + inducing_without_variation + non_inducing_with_variation +
               non_inducing_without_variation;
    }
    bool operator==(const CooccurrenceCounts&) const = default;
};

struct ReviewCandidate {
    std::string project;
    std::string commit;
    std::array<double, 3> reuse_delta{};
    std::vector<std::string> bug_ids;
};

struct CooccurrenceReport {
    std::size_t rows = 0;
    std::array<CooccurrenceCounts, 3> per_metric;  // spec, impl, delegation
    CooccurrenceCounts any;   // at least one reuse metric changed
    CooccurrenceCounts all;   // all three changed
    std::vector<ReviewCandidate> candidates;  // inducing rows with any change
};

// Uses each row's inducing_bug_ids.
CooccurrenceReport reuse_defect_cooccurrence(const std::vector<PanelRow>& panel,
                                             Aggregation aggregation = Aggregation::Sum);

// Recomputes inducing bug ids by matching the ledger's introducing commits
// (prefixes allowed) against each row's destination commit.
CooccurrenceReport reuse_defect_cooccurrence(const std::vector<PanelRow>& panel, const BugLedger& ledger,
                                             Aggregation aggregation = Aggregation::Sum);

} // namespace reusemine::stats
