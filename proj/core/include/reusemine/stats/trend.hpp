#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace reusemine::stats {

enum class TrendDirection { Increasing, Decreasing, Flat };

std::string_view to_string(TrendDirection d);

struct TrendSummary {
    std::size_t n = 0;
    double spearman_rho = 0.0;   // against the commit index; 0 for a constant series
    double mann_kendall_s = 0.0;
    double mann_kendall_variance = 0.0;  // tie corrected
    double mann_kendall_z = 0.0;         // continuity corrected
    double mann_kendall_p = 1.0;
    TrendDirection direction = TrendDirection::Flat;  // sign of S
    bool significant = false;                          // p < alpha
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
};

// Throws SeriesTooShort when fewer than 3 values are given.
TrendSummary trend_summary(const std::vector<double>& series, double alpha = 0.05);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> average_ranks(const std::vector<double>& values);

double spearman_rho(const std::vector<double>& a, const std::vector<double>& b);

} // namespace reusemine::stats
