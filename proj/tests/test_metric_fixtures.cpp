#include <gtest/gtest.h>

#include "support/java_fixtures.hpp"
#include "support/metric_runner.hpp"

namespace reusemine::testing {
namespace {

class MetricFixture : public ::testing::TestWithParam<JavaFixture> {};

TEST_P(MetricFixture, LibraryOracleAndHandValuesAgree) {
    for (const std::string& problem : fixture_mismatches(GetParam())) ADD_FAILURE() << problem;
}

TEST_P(MetricFixture, AtMostSixTypes) { EXPECT_LE(GetParam().expected.size(), 6u); }

INSTANTIATE_TEST_SUITE_P(Fixtures, MetricFixture, ::testing::ValuesIn(metric_fixtures()),
                         [](const ::testing::TestParamInfo<JavaFixture>& info) { return info.param.name; });

TEST(MetricFixtureCatalog, HasAtLeastTwentyFixtures) { EXPECT_GE(metric_fixtures().size(), 20u); }

TEST(MetricFixtureCatalog, EveryMetricTakesANonZeroValueSomewhere) {
    OracleVector seen{};
    for (const JavaFixture& f : metric_fixtures()) {
        for (const ExpectedMetrics& e : f.expected) {
            const OracleVector v = as_vector(e);
            for (std::size_t i = 0; i < v.size(); ++i) seen[i] = std::max(seen[i], v[i]);
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_GT(seen[i], 0u) << kMetricNames[i];
}

} // namespace
} // namespace reusemine::testing
