#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "reusemine/ck_metrics.hpp"
#include "reusemine/reuse_metrics.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine {

struct MetricsOptions {
    ReuseOptions reuse;
    CKOptions ck;

    bool operator==(const MetricsOptions&) const = default;
};

struct ClassMetricsRecord {
    std::string class_name;
    TypeKind kind = TypeKind::Class;
    ReuseVector reuse;
    CKVector ck;

    bool operator==(const ClassMetricsRecord&) const = default;
};

inline constexpr std::size_t kMetricCount = 10;
using MetricArray = std::array<double, kMetricCount>;

// Column order used by every metric table: the three reuse metrics, then
// the CK controls.
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "spec_inheritance", "impl_inheritance", "delegation", "dit", "noc",
    "loc",              "lcom",             "wmc",        "rfc", "cbo"};
inline constexpr std::size_t kReuseMetricCount = 3;

MetricArray metric_values(const ClassMetricsRecord& record);

// One record per declared type, ordered by qualified name.
std::vector<ClassMetricsRecord> compute_snapshot_metrics(const TypeGraph& graph, const MetricsOptions& options = {});

struct SnapshotAggregate {
    std::size_t class_count = 0;
    MetricArray sum{};
    MetricArray mean{};  // zeros for an empty snapshot

    bool operator==(const SnapshotAggregate&) const = default;
};

SnapshotAggregate aggregate(const std::vector<ClassMetricsRecord>& records);

} // namespace reusemine
