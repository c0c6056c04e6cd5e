#include "reusemine/stats/collinearity.hpp"

#include <algorithm>
#include <cmath>

#include "reusemine/errors.hpp"

namespace reusemine::stats {

VifResult compute_vif(const DesignMatrix& m) {
    validate(m);
    const Eigen::Index n = m.rows();
    const Eigen::Index p = m.cols();

    VifResult result;
    result.column_names = m.column_names;
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::VectorXd y = m.x.col(j);
        Eigen::MatrixXd others(n, p);
        others.col(0).setOnes();
        for (Eigen::Index k = 0, c = 1; k < p; ++k) {
            if (k != j) others.col(c++) = m.x.col(k);
        }
        const Eigen::VectorXd beta = others.colPivHouseholderQr().solve(y);
        const double rss = (y - others * beta).squaredNorm();
        const double tss = (y.array() - y.mean()).square().sum();
        const double r2 = 1.0 - rss / tss;
        const bool exact = r2 >= kExactCollinearityR2;
        result.exactly_collinear.push_back(exact);
        result.vif.push_back(exact ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - r2));
    }
    return result;
}

ScreeningResult screen_collinearity(const DesignMatrix& m, double threshold,
                                    const std::vector<std::string>& protected_columns) {
    ScreeningResult out;
    out.matrix = m;

    std::vector<Eigen::Index> constant;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const auto col = m.x.col(j);
        if ((col.array() == col(0)).all()) {
            constant.push_back(j);
            out.removals.push_back({m.column_names[static_cast<std::size_t>(j)], std::nan(""), "constant column"});
        }
    }
    if (!constant.empty()) out.matrix = drop_columns(m, constant);

    auto is_protected = [&](const std::string& name) {
        return std::find(protected_columns.begin(), protected_columns.end(), name) != protected_columns.end();
    };

    while (true) {
        if (out.matrix.cols() < 2) {
            out.final_vif = out.matrix.cols() == 1 ? compute_vif(out.matrix) : VifResult{};
            break;
        }
        VifResult v = compute_vif(out.matrix);
        // Highest VIF wins; ties go to the later column so the first copy of
        // a duplicate survives.
        std::optional<std::size_t> pick;
        for (std::size_t j = 0; j < v.vif.size(); ++j) {
            const bool eligible = !is_protected(v.column_names[j]) || v.exactly_collinear[j];
            if (!eligible || !(v.vif[j] > threshold)) continue;
            if (!pick || v.vif[j] >= v.vif[*pick]) pick = j;
        }
        // Prefer an unprotected column whenever one qualifies.
        if (pick && is_protected(v.column_names[*pick])) {
            for (std::size_t j = 0; j < v.vif.size(); ++j) {
                if (is_protected(v.column_names[j]) || !(v.vif[j] > threshold)) continue;
                if (!pick || is_protected(v.column_names[*pick]) || v.vif[j] >= v.vif[*pick]) pick = j;
            }
        }
        if (!pick) {
            out.final_vif = std::move(v);
            break;
        }
        out.removals.push_back({v.column_names[*pick], v.vif[*pick],
                                v.exactly_collinear[*pick] ? "exactly collinear" : "VIF above threshold"});
        out.matrix = drop_columns(out.matrix, {static_cast<Eigen::Index>(*pick)});
    }
    return out;
}

} // namespace reusemine::stats
