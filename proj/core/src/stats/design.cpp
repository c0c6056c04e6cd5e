#include "reusemine/stats/design.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "reusemine/errors.hpp"

namespace reusemine::stats {

Eigen::Index DesignMatrix::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) return static_cast<Eigen::Index>(i);
    }
    return -1;
}

namespace {

bool is_constant(const Eigen::VectorXd& v) {
    return v.size() == 0 || (v.array() == v(0)).all();
}

} // namespace

void validate(const DesignMatrix& m) {
    if (!m.x.allFinite()) throw DegenerateMatrix("design matrix contains missing or non-finite values");
    if (m.rows() <= m.cols()) {
        throw DegenerateMatrix("design matrix has n = " + std::to_string(m.rows()) + " rows for p = " +
                               std::to_string(m.cols()) + " predictors; fitting needs n > p");
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (is_constant(m.x.col(j))) {
            throw DegenerateMatrix("column '" + m.column_names[static_cast<std::size_t>(j)] + "' is constant");
        }
    }
}

DesignMatrix standardize(const DesignMatrix& m) {
    DesignMatrix out = m;
    const Eigen::Index n = m.rows();
    out.center.resize(m.cols());
    out.scale.resize(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double mean = m.x.col(j).mean();
        const double ss = (m.x.col(j).array() - mean).square().sum();
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        if (!(sd > 0.0)) {
            throw DegenerateMatrix("column '" + m.column_names[static_cast<std::size_t>(j)] + "' is constant");
        }
        out.center(j) = mean;
        out.scale(j) = sd;
        out.x.col(j) = (m.x.col(j).array() - mean) / sd;
    }
    return out;
}

DesignMatrix drop_columns(const DesignMatrix& m, const std::vector<Eigen::Index>& columns) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (std::find(columns.begin(), columns.end(), j) == columns.end()) keep.push_back(j);
    }
    DesignMatrix out = m;
    out.x.resize(m.rows(), static_cast<Eigen::Index>(keep.size()));
    out.column_names.clear();
    if (m.standardized()) {
        out.center.resize(static_cast<Eigen::Index>(keep.size()));
        out.scale.resize(static_cast<Eigen::Index>(keep.size()));
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        out.x.col(kk) = m.x.col(keep[k]);
        out.column_names.push_back(m.column_names[static_cast<std::size_t>(keep[k])]);
        if (m.standardized()) {
            out.center(kk) = m.center(keep[k]);
            out.scale(kk) = m.scale(keep[k]);
        }
    }
    return out;
}

std::string_view to_string(Aggregation a) { return a == Aggregation::Mean ? "mean" : "sum"; }

Aggregation aggregation_from_string(std::string_view text) {
    if (text == "sum") return Aggregation::Sum;
    if (text == "mean") return Aggregation::Mean;
    throw ConfigError("unknown aggregation '" + std::string(text) + "' (expected sum or mean)");
}

std::string_view to_string(PredictorForm f) { return f == PredictorForm::Deltas ? "deltas" : "levels"; }

PredictorForm predictor_form_from_string(std::string_view text) {
    if (text == "levels") return PredictorForm::Levels;
    if (text == "deltas") return PredictorForm::Deltas;
    throw ConfigError("unknown predictor form '" + std::string(text) + "' (expected levels or deltas)");
}

namespace {

std::string metric_column(std::size_t metric, PredictorForm form) {
    std::string name(kMetricNames[metric]);
    return form == PredictorForm::Deltas ? name + "_delta" : name;
}

double metric_value(const PanelRow& r, std::size_t metric, const PanelDesignOptions& o) {
    const bool sum = o.aggregation == Aggregation::Sum;
    if (o.form == PredictorForm::Levels) return sum ? r.sum[metric] : r.mean[metric];
    return sum ? r.sum_delta[metric] : r.mean_delta[metric];
}

} // namespace

std::vector<std::string> reuse_predictor_names(const PanelDesignOptions& options) {
    std::vector<std::string> names;
    for (std::size_t m = 0; m < kReuseMetricCount; ++m) names.push_back(metric_column(m, options.form));
    return names;
}

DesignMatrix panel_design(const std::vector<PanelRow>& rows, Response response, const PanelDesignOptions& options) {
    DesignMatrix d;
    for (std::size_t m = 0; m < kMetricCount; ++m) d.column_names.push_back(metric_column(m, options.form));
    if (response == Response::BugDelta) d.column_names.push_back("churn");

    std::vector<std::string> projects;
    if (options.project_indicators) {
        std::set<std::string> names;
        for (const PanelRow& r : rows) names.insert(r.project);
        projects.assign(names.begin(), names.end());
        for (std::size_t i = 1; i < projects.size(); ++i) d.column_names.push_back("project[" + projects[i] + "]");
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    d.x.resize(n, static_cast<Eigen::Index>(d.column_names.size()));
    if (response == Response::BugDelta) {
        d.category_names = {"decrease", "stable", "increase"};
    } else {
        d.response.resize(n);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const PanelRow& r = rows[static_cast<std::size_t>(i)];
        Eigen::Index c = 0;
        for (std::size_t m = 0; m < kMetricCount; ++m) d.x(i, c++) = metric_value(r, m, options);
        if (response == Response::BugDelta) {
            d.x(i, c++) = static_cast<double>(r.churn);
            d.categories.push_back(static_cast<int>(r.label));
        } else {
            d.response(i) = static_cast<double>(r.churn);
        }
        for (std::size_t p = 1; p < projects.size(); ++p) d.x(i, c++) = r.project == projects[p] ? 1.0 : 0.0;
    }
    return d;
}

} // namespace reusemine::stats
