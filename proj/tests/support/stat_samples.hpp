#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "reusemine/stats/design.hpp"

namespace reusemine::testing {

// Categories decrease, stable, increase; stable is the reference.
const std::vector<std::string>& bug_delta_categories();

// Standard normal predictors and softmax labels. `beta` has one row per
// non-reference category (decrease, increase) and the intercept first.
stats::DesignMatrix softmax_sample(std::size_t n, const Eigen::MatrixXd& beta, std::uint64_t seed);

// Standard normal predictors and Poisson counts with log mean
// beta[0] + x * beta.tail().
stats::DesignMatrix poisson_sample(std::size_t n, const Eigen::VectorXd& beta, std::uint64_t seed);

// Three unit-variance columns with pairwise correlation rho.
stats::DesignMatrix equicorrelated(std::size_t n, double rho, std::uint64_t seed);

stats::DesignMatrix with_columns(const std::vector<std::string>& names, const std::vector<Eigen::VectorXd>& cols);

} // namespace reusemine::testing
