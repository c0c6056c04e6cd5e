#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "reusemine/app/commands.hpp"
#include "reusemine/class_metrics.hpp"
#include "reusemine/source_model.hpp"
#include "reusemine/stats/collinearity.hpp"
#include "reusemine/stats/design.hpp"
#include "reusemine/stats/models.hpp"
#include "reusemine/type_graph.hpp"

namespace {

using namespace reusemine;

// A chain of classes, each extending the previous one, implementing a
// shared interface and delegating to a service.
std::vector<std::string> generated_sources(int classes) {
    std::vector<std::string> files;
    files.push_back("package gen;\npublic interface Api { void op(); }\n");
    files.push_back("package gen;\npublic class Service {\n    public void serve(int n) {}\n}\n");
    for (int i = 0; i < classes; ++i) {
        std::string s = "package gen;\n";
        s += "public class C" + std::to_string(i);
        if (i > 0) s += " extends C" + std::to_string(i - 1);
        s += " implements Api {\n";
        s += "    private Service service = new Service();\n";
        s += "    private int count;\n";
        s += "    public void op() { count++; }\n";
        s += "    public void m" + std::to_string(i) + "(int n) {\n";
        s += "        for (int k = 0; k < n; k++) {\n";
        s += "            if (k % 2 == 0) { service.serve(k); } else { op(); }\n";
        s += "        }\n";
        if (i > 0) s += "        m" + std::to_string(i - 1) + "(n - 1);\n";
        s += "    }\n}\n";
        files.push_back(std::move(s));
    }
    return files;
}

std::vector<CompilationUnitModel> parse_all(const std::vector<std::string>& files) {
    std::vector<CompilationUnitModel> units;
    for (std::size_t i = 0; i < files.size(); ++i) {
        units.push_back(parse_compilation_unit(files[i], "gen/F" + std::to_string(i) + ".java"));
    }
    return units;
}

void BM_Parse(benchmark::State& state) {
    const auto files = generated_sources(static_cast<int>(state.range(0)));
    std::size_t bytes = 0;
    for (const auto& f : files) bytes += f.size();
    for (auto _ : state) benchmark::DoNotOptimize(parse_all(files));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_Parse)->Arg(50)->Arg(400);

void BM_SnapshotMetrics(benchmark::State& state) {
    const auto units = parse_all(generated_sources(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        const TypeGraph graph = build_type_graph(units);
        benchmark::DoNotOptimize(compute_snapshot_metrics(graph));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SnapshotMetrics)->Arg(50)->Arg(400);

void BM_MultinomialFit(benchmark::State& state) {
    const auto rows = app::synthetic_panel(static_cast<std::size_t>(state.range(0)), 7);
    const auto design = stats::panel_design(rows, stats::Response::BugDelta);
    for (auto _ : state) benchmark::DoNotOptimize(stats::fit_multinomial(design));
}
BENCHMARK(BM_MultinomialFit)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_VifScreening(benchmark::State& state) {
    const auto rows = app::synthetic_panel(static_cast<std::size_t>(state.range(0)), 7);
    const auto design = stats::panel_design(rows, stats::Response::Churn);
    for (auto _ : state) benchmark::DoNotOptimize(stats::screen_collinearity(design));
}
BENCHMARK(BM_VifScreening)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
