#include "reusemine/stats/trend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "reusemine/errors.hpp"
#include "reusemine/stats/models.hpp"

namespace reusemine::stats {

std::string_view to_string(TrendDirection d) {
    switch (d) {
    case TrendDirection::Increasing:
        return "increasing";
    case TrendDirection::Decreasing:
        return "decreasing";
    case TrendDirection::Flat:
        return "flat";
    }
    return "flat";
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const auto n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

TrendSummary trend_summary(const std::vector<double>& series, double alpha) {
    if (series.size() < 3) {
        throw SeriesTooShort("trend analysis needs at least 3 values, got " + std::to_string(series.size()));
    }
    TrendSummary t;
    t.n = series.size();

    std::vector<double> index(series.size());
    std::iota(index.begin(), index.end(), 0.0);
    t.spearman_rho = spearman_rho(series, index);

    long long s = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (std::size_t j = i + 1; j < series.size(); ++j) {
            s += (series[j] > series[i]) - (series[j] < series[i]);
        }
    }
    t.mann_kendall_s = static_cast<double>(s);

    std::map<double, std::size_t> ties;
    for (double v : series) ++ties[v];
    const auto n = static_cast<double>(series.size());
    double var = n * (n - 1.0) * (2.0 * n + 5.0);
    for (const auto& [_, count] : ties) {
        const auto c = static_cast<double>(count);
        var -= c * (c - 1.0) * (2.0 * c + 5.0);
    }
    t.mann_kendall_variance = var / 18.0;
    if (t.mann_kendall_variance > 0.0) {
        if (s > 0) t.mann_kendall_z = (t.mann_kendall_s - 1.0) / std::sqrt(t.mann_kendall_variance);
        if (s < 0) t.mann_kendall_z = (t.mann_kendall_s + 1.0) / std::sqrt(t.mann_kendall_variance);
    }
    t.mann_kendall_p = two_sided_p(t.mann_kendall_z);
    t.direction = s > 0 ? TrendDirection::Increasing : s < 0 ? TrendDirection::Decreasing : TrendDirection::Flat;
    t.significant = t.mann_kendall_p < alpha;

    std::vector<double> sorted = series;
    std::sort(sorted.begin(), sorted.end());
    t.min = sorted.front();
    t.max = sorted.back();
    t.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    const std::size_t mid = sorted.size() / 2;
    t.median = sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return t;
}

} // namespace reusemine::stats
