#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "reusemine/stats/design.hpp"

namespace reusemine::stats {

enum class Family { Multinomial, GlmGaussian, GlmPoisson };

std::string_view to_string(Family f);

enum class ResponseTransform { None, Log1p };

struct FitResult {
    Family family = Family::Multinomial;
    std::string link;                 // "softmax", "identity", "log"
    std::string response_transform;   // "none" or "log1p"
    std::vector<std::string> term_names;  // "(intercept)" first
    // Multinomial: one row per category (reference row identically zero);
    // GLM: a single row.
    std::vector<std::string> row_names;
    std::string reference;  // multinomial only
    Eigen::MatrixXd coefficients;
    Eigen::MatrixXd std_errors;  // NaN on the reference row
    Eigen::MatrixXd z_values;
    Eigen::MatrixXd p_values;
    double log_likelihood = 0.0;
    double null_log_likelihood = 0.0;
    double aic = 0.0;
    double pseudo_r2 = 0.0;     // McFadden; NaN for GLMs
    double dispersion = 1.0;    // residual variance for the Gaussian family
    // Largest score component per observation, on internally standardized
    // predictors (Gaussian: relative normal-equation residual).
    double gradient_max_norm = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t observations = 0;
    std::vector<double> log_likelihood_history;  // one entry per accepted iterate, starting point first

    double coefficient(std::string_view row, std::string_view term) const;
    double std_error(std::string_view row, std::string_view term) const;
};

struct MultinomialOptions {
    std::string reference = "stable";
    double tolerance = 1e-8;  // on gradient_max_norm
    std::size_t max_iterations = 500;
    // Largest coefficient magnitude, on internally standardized predictors,
    // before the data are declared separated.
    double separation_bound = 20.0;
};

// Softmax regression by Newton-Raphson with step halving. Throws
// DegenerateMatrix (n <= p, a constant column, a category with fewer than
// p + 1 rows, singular information) and SeparationError.
FitResult fit_multinomial(const DesignMatrix& m, const MultinomialOptions& options = {});

struct GlmOptions {
    Family family = Family::GlmGaussian;
    ResponseTransform transform = ResponseTransform::None;
    double tolerance = 1e-8;
    std::size_t max_iterations = 500;
};

// IRLS fit. Gaussian/identity reduces to least squares. Throws
// DegenerateMatrix (constant response, rank-deficient design, n <= p).
FitResult fit_glm(const DesignMatrix& m, const GlmOptions& options = {});

// Building blocks of the multinomial likelihood, exposed for checking.
// `x` includes the intercept column; `theta` stacks the coefficient
// vectors of the non-reference categories in category order.
Eigen::MatrixXd multinomial_probabilities(const Eigen::MatrixXd& x, const Eigen::VectorXd& theta,
                                          std::size_t categories, std::size_t reference);
double multinomial_log_likelihood(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& theta,
                                  std::size_t categories, std::size_t reference);
Eigen::VectorXd multinomial_gradient(const Eigen::MatrixXd& x, const std::vector<int>& y,
                                     const Eigen::VectorXd& theta, std::size_t categories, std::size_t reference);

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x);

// Two-sided normal p-value.
double two_sided_p(double z);

std::string fit_to_json(const FitResult& fit, int indent = 2);
void write_fit_table(std::ostream& out, const FitResult& fit);

} // namespace reusemine::stats
