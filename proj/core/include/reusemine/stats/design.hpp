#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "reusemine/history.hpp"

namespace reusemine::stats {

// Predictor matrix without an intercept column (fits add their own) plus
// one response. `center`/`scale` are empty for raw columns and hold the
// per-column mean and standard deviation after standardize().
struct DesignMatrix {
    Eigen::MatrixXd x;
    std::vector<std::string> column_names;

    // Categorical response: index into `category_names`.
    std::vector<int> categories;
    std::vector<std::string> category_names;
    // Numeric response.
    Eigen::VectorXd response;

    Eigen::VectorXd center;
    Eigen::VectorXd scale;

    Eigen::Index rows() const { return x.rows(); }
    Eigen::Index cols() const { return x.cols(); }
    bool standardized() const { return center.size() == x.cols() && x.cols() > 0; }
    Eigen::Index column_index(std::string_view name) const;  // -1 when absent
};

// Throws DegenerateMatrix on missing (non-finite) values, a constant column
// or n <= p.
void validate(const DesignMatrix& m);

// Copy with every column centered and scaled to unit (sample) standard
// deviation. Throws DegenerateMatrix on a constant column.
DesignMatrix standardize(const DesignMatrix& m);

DesignMatrix drop_columns(const DesignMatrix& m, const std::vector<Eigen::Index>& columns);

enum class Aggregation { Sum, Mean };
enum class PredictorForm { Levels, Deltas };
enum class Response { BugDelta, Churn };

std::string_view to_string(Aggregation a);
Aggregation aggregation_from_string(std::string_view text);  // throws ConfigError
std::string_view to_string(PredictorForm f);
PredictorForm predictor_form_from_string(std::string_view text);  // throws ConfigError

struct PanelDesignOptions {
    Aggregation aggregation = Aggregation::Sum;
    PredictorForm form = PredictorForm::Levels;
    // Add one indicator column per project after the first (sorted).
    bool project_indicators = false;
};

// Reuse predictors, the CK controls, and churn as a control for the
// bug-delta response. Category order: decrease, stable, increase.
DesignMatrix panel_design(const std::vector<PanelRow>& rows, Response response, const PanelDesignOptions& options = {});

// Column names of the three reuse predictors under the given options.
std::vector<std::string> reuse_predictor_names(const PanelDesignOptions& options = {});

} // namespace reusemine::stats
