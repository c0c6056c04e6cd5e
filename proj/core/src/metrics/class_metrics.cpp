#include "reusemine/class_metrics.hpp"

namespace reusemine {

MetricArray metric_values(const ClassMetricsRecord& r) {
    return {static_cast<double>(r.reuse.spec_inheritance),
            static_cast<double>(r.reuse.impl_inheritance),
            static_cast<double>(r.reuse.delegation),
            static_cast<double>(r.ck.dit),
            static_cast<double>(r.ck.noc),
            static_cast<double>(r.ck.loc),
            static_cast<double>(r.ck.lcom),
            static_cast<double>(r.ck.wmc),
            static_cast<double>(r.ck.rfc),
            static_cast<double>(r.ck.cbo)};
}

std::vector<ClassMetricsRecord> compute_snapshot_metrics(const TypeGraph& graph, const MetricsOptions& options) {
    std::vector<ClassMetricsRecord> out;
    out.reserve(graph.types().size());
    for (const auto& [qn, decl] : graph.types()) {
        ClassMetricsRecord r;
        r.class_name = qn;
        r.kind = decl.kind;
        r.reuse = reuse_vector(decl, graph, options.reuse);
        r.ck = compute_ck(decl, graph, options.ck);
        out.push_back(std::move(r));
    }
    return out;
}

SnapshotAggregate aggregate(const std::vector<ClassMetricsRecord>& records) {
    SnapshotAggregate a;
    a.class_count = records.size();
    for (const ClassMetricsRecord& r : records) {
        const MetricArray v = metric_values(r);
        for (std::size_t i = 0; i < kMetricCount; ++i) a.sum[i] += v[i];
    }
    if (a.class_count > 0) {
        for (std::size_t i = 0; i < kMetricCount; ++i) a.mean[i] = a.sum[i] / static_cast<double>(a.class_count);
    }
    return a;
}

} // namespace reusemine
