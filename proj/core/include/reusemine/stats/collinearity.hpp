#pragma once

#include <limits>
#include <string>
#include <vector>

#include "reusemine/stats/design.hpp"

namespace reusemine::stats {

struct VifResult {
    std::vector<std::string> column_names;
    // Infinity for exactly collinear columns.
    std::vector<double> vif;
    std::vector<bool> exactly_collinear;
};

// R^2 at or above this counts as exact collinearity.
inline constexpr double kExactCollinearityR2 = 1.0 - 1e-10;

// VIF_j = 1 / (1 - R^2_j), regressing column j on the others plus an
// intercept. Throws DegenerateMatrix on n <= p or a constant column.
VifResult compute_vif(const DesignMatrix& m);

struct Removal {
    std::string column;
    double vif = 0.0;  // at the time of removal; NaN for constant columns
    std::string reason;
};

struct ScreeningResult {
    DesignMatrix matrix;
    std::vector<Removal> removals;  // in removal order
    VifResult final_vif;
};

// Drops constant columns, then repeatedly removes the highest-VIF column
// while the maximum exceeds `threshold`. Columns in `protected_columns` are
// removed only when exactly collinear.
ScreeningResult screen_collinearity(const DesignMatrix& m, double threshold = 10.0,
                                    const std::vector<std::string>& protected_columns = {});

} // namespace reusemine::stats
