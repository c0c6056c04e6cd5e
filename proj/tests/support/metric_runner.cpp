#include "metric_runner.hpp"

#include <sstream>

namespace reusemine::testing {

namespace {

std::string render(const OracleVector& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << kMetricNames[i] << "=" << v[i];
    return out.str();
}

} // namespace

std::map<std::string, OracleVector> library_metrics(const std::vector<SourceFile>& files,
                                                    const MetricsOptions& options) {
    std::vector<CompilationUnitModel> units;
    for (const SourceFile& f : files) units.push_back(parse_compilation_unit(f.text, f.path));
    const TypeGraph graph = build_type_graph(units);
    std::map<std::string, OracleVector> out;
    for (const ClassMetricsRecord& r : compute_snapshot_metrics(graph, options)) out[r.class_name] = as_vector(r);
    return out;
}

std::vector<std::string> fixture_mismatches(const JavaFixture& fixture) {
    std::vector<std::string> problems;
    const auto tool = library_metrics(fixture.files);
    const auto oracle = oracle_metrics(fixture.files);
    if (tool.size() != fixture.expected.size()) {
        problems.push_back(fixture.name + ": library reports " + std::to_string(tool.size()) + " types, expected " +
                           std::to_string(fixture.expected.size()));
    }
    for (const ExpectedMetrics& e : fixture.expected) {
        const OracleVector want = as_vector(e);
        auto t = tool.find(e.class_name);
        auto o = oracle.find(e.class_name);
        if (t == tool.end() || o == oracle.end()) {
            problems.push_back(fixture.name + ": type " + e.class_name + " missing");
            continue;
        }
        if (t->second != want) {
            problems.push_back(fixture.name + " " + e.class_name + ": library " + render(t->second) + " / hand " +
                               render(want));
        }
        if (o->second != want) {
            problems.push_back(fixture.name + " " + e.class_name + ": oracle " + render(o->second) + " / hand " +
                               render(want));
        }
    }
    return problems;
}

} // namespace reusemine::testing
