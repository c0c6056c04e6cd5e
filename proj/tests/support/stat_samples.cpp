#include "stat_samples.hpp"

#include <cmath>
#include <random>

namespace reusemine::testing {

using Eigen::Index;

const std::vector<std::string>& bug_delta_categories() {
    static const std::vector<std::string> names = {"decrease", "stable", "increase"};
    return names;
}

stats::DesignMatrix softmax_sample(std::size_t n, const Eigen::MatrixXd& beta, std::uint64_t seed) {
    const Index p = beta.cols() - 1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    stats::DesignMatrix m;
    m.x.resize(static_cast<Index>(n), p);
    m.category_names = bug_delta_categories();
    for (Index j = 0; j < p; ++j) m.column_names.push_back("x" + std::to_string(j + 1));
    for (Index i = 0; i < m.x.rows(); ++i) {
        for (Index j = 0; j < p; ++j) m.x(i, j) = normal(rng);
        const double e_dec = std::exp(beta(0, 0) + m.x.row(i).dot(beta.row(0).tail(p)));
        const double e_inc = std::exp(beta(1, 0) + m.x.row(i).dot(beta.row(1).tail(p)));
        const double u = unif(rng) * (e_dec + 1.0 + e_inc);
        m.categories.push_back(u < e_dec ? 0 : (u < e_dec + 1.0 ? 1 : 2));
    }
    return m;
}

stats::DesignMatrix poisson_sample(std::size_t n, const Eigen::VectorXd& beta, std::uint64_t seed) {
    const Index p = beta.size() - 1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    stats::DesignMatrix m;
    m.x.resize(static_cast<Index>(n), p);
    m.response.resize(static_cast<Index>(n));
    for (Index j = 0; j < p; ++j) m.column_names.push_back("x" + std::to_string(j + 1));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < p; ++j) m.x(i, j) = normal(rng);
        std::poisson_distribution<int> pois(std::exp(beta(0) + m.x.row(i).dot(beta.tail(p))));
        m.response(i) = pois(rng);
    }
    return m;
}

stats::DesignMatrix equicorrelated(std::size_t n, double rho, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    stats::DesignMatrix m;
    m.x.resize(static_cast<Index>(n), 3);
    m.column_names = {"a", "b", "c"};
    for (Index i = 0; i < m.rows(); ++i) {
        const double z = normal(rng);
        for (Index j = 0; j < 3; ++j) m.x(i, j) = std::sqrt(rho) * z + std::sqrt(1 - rho) * normal(rng);
    }
    return m;
}

stats::DesignMatrix with_columns(const std::vector<std::string>& names, const std::vector<Eigen::VectorXd>& cols) {
    stats::DesignMatrix m;
    m.x.resize(cols.front().size(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.x.col(static_cast<Index>(j)) = cols[j];
    m.column_names = names;
    return m;
}

} // namespace reusemine::testing
