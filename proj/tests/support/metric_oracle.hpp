#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "java_fixtures.hpp"
#include "reusemine/class_metrics.hpp"
#include "reusemine/source_model.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine::testing {

// Brute-force reference implementation: every closure, method pair and use
// site is enumerated explicitly. Values in kMetricNames order.
using OracleVector = std::array<std::size_t, kMetricCount>;

std::map<std::string, OracleVector> oracle_metrics(const std::vector<SourceFile>& files,
                                                   const MetricsOptions& options = {});

OracleVector as_vector(const ExpectedMetrics& e);
OracleVector as_vector(const ClassMetricsRecord& r);

} // namespace reusemine::testing
