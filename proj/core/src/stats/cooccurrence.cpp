#include "reusemine/stats/cooccurrence.hpp"

#include <algorithm>
#include <cmath>

namespace reusemine::stats {

namespace {

void tally(CooccurrenceCounts& c, bool inducing, bool varied) {
    if (inducing) {
        ++(varied ? c.inducing_with_variation : c.inducing_without_variation);
    } else {
        ++(varied ? c.non_inducing_with_variation : c.non_inducing_without_variation);
    }
}

CooccurrenceReport build(const std::vector<PanelRow>& panel, const std::vector<std::vector<std::string>>& inducing,
                         Aggregation aggregation) {
    CooccurrenceReport report;
    report.rows = panel.size();
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const PanelRow& r = panel[i];
        const bool is_inducing = !inducing[i].empty();
        std::array<double, 3> delta{};
        std::array<bool, 3> varied{};
        for (std::size_t m = 0; m < kReuseMetricCount; ++m) {
            delta[m] = aggregation == Aggregation::Sum ? r.sum_delta[m] : r.mean_delta[m];
            varied[m] = std::abs(delta[m]) > 1e-12;
            tally(report.per_metric[m], is_inducing, varied[m]);
        }
        const bool any = varied[0] || varied[1] || varied[2];
        tally(report.any, is_inducing, any);
        tally(report.all, is_inducing, varied[0] && varied[1] && varied[2]);
        if (is_inducing && any) report.candidates.push_back({r.project, r.to_commit, delta, inducing[i]});
    }
    return report;
}

} // namespace

CooccurrenceReport reuse_defect_cooccurrence(const std::vector<PanelRow>& panel, Aggregation aggregation) {
    std::vector<std::vector<std::string>> inducing;
    inducing.reserve(panel.size());
    for (const PanelRow& r : panel) inducing.push_back(r.inducing_bug_ids);
    return build(panel, inducing, aggregation);
}

CooccurrenceReport reuse_defect_cooccurrence(const std::vector<PanelRow>& panel, const BugLedger& ledger,
                                             Aggregation aggregation) {
    std::vector<std::vector<std::string>> inducing;
    inducing.reserve(panel.size());
    for (const PanelRow& r : panel) {
        std::vector<std::string> ids;
        for (const BugEntry& e : ledger.entries) {
            if (!e.introducing_commit) continue;
            const std::string& c = *e.introducing_commit;
            if (!c.empty() && r.to_commit.starts_with(c)) ids.push_back(e.bug_id);
        }
        std::sort(ids.begin(), ids.end());
        inducing.push_back(std::move(ids));
    }
    return build(panel, inducing, aggregation);
}

} // namespace reusemine::stats
