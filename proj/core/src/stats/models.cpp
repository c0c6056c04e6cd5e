#include "reusemine/stats/models.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reusemine/csv.hpp"
#include "reusemine/errors.hpp"

namespace reusemine::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Column-wise affine map between raw predictors and the internally
// standardized copy the optimizers work on.
struct Scaling {
    Eigen::VectorXd center;
    Eigen::VectorXd scale;

    static Scaling of(const Eigen::MatrixXd& x) {
        Scaling s;
        const Eigen::Index n = x.rows();
        s.center = x.colwise().mean().transpose();
        s.scale.resize(x.cols());
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double ss = (x.col(j).array() - s.center(j)).square().sum();
            s.scale(j) = std::sqrt(ss / static_cast<double>(std::max<Eigen::Index>(n - 1, 1)));
        }
        return s;
    }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
        Eigen::MatrixXd z = x;
        for (Eigen::Index j = 0; j < x.cols(); ++j) z.col(j) = (x.col(j).array() - center(j)) / scale(j);
        return z;
    }

    // Maps coefficients [intercept, slopes] on the standardized scale to
    // the raw scale: beta_raw = T * beta_std.
    Eigen::MatrixXd transform() const {
        const Eigen::Index q = center.size() + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(q, q);
        t(0, 0) = 1.0;
        for (Eigen::Index j = 0; j < center.size(); ++j) {
            t(0, j + 1) = -center(j) / scale(j);
            t(j + 1, j + 1) = 1.0 / scale(j);
        }
        return t;
    }
};

std::vector<std::string> term_names_for(const DesignMatrix& m) {
    std::vector<std::string> names{"(intercept)"};
    names.insert(names.end(), m.column_names.begin(), m.column_names.end());
    return names;
}

Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& a, const char* what) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        throw DegenerateMatrix(std::string(what) + " is not positive definite");
    }
    Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
    if (!inv.allFinite()) throw DegenerateMatrix(std::string(what) + " is singular");
    return inv;
}

void fill_wald(FitResult& fit) {
    fit.z_values.resizeLike(fit.coefficients);
    fit.p_values.resizeLike(fit.coefficients);
    for (Eigen::Index r = 0; r < fit.coefficients.rows(); ++r) {
        for (Eigen::Index c = 0; c < fit.coefficients.cols(); ++c) {
            const double se = fit.std_errors(r, c);
            const double z = std::isnan(se) ? kNaN : fit.coefficients(r, c) / se;
            fit.z_values(r, c) = z;
            fit.p_values(r, c) = std::isnan(z) ? kNaN : two_sided_p(z);
        }
    }
}

struct Information {
    Eigen::MatrixXd probabilities;
    double log_likelihood = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd information;  // negative Hessian
};

Information multinomial_information(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& theta,
                                    std::size_t k_total, std::size_t reference) {
    Information info;
    info.probabilities = multinomial_probabilities(x, theta, k_total, reference);
    info.log_likelihood = multinomial_log_likelihood(x, y, theta, k_total, reference);
    info.gradient = multinomial_gradient(x, y, theta, k_total, reference);

    const Eigen::Index q = x.cols();
    const auto free = static_cast<Eigen::Index>(k_total - 1);
    info.information.setZero(free * q, free * q);
    std::vector<std::size_t> cats;
    for (std::size_t k = 0; k < k_total; ++k) {
        if (k != reference) cats.push_back(k);
    }
    for (Eigen::Index a = 0; a < free; ++a) {
        for (Eigen::Index b = a; b < free; ++b) {
            const Eigen::ArrayXd pa = info.probabilities.col(static_cast<Eigen::Index>(cats[static_cast<std::size_t>(a)])).array();
            const Eigen::ArrayXd pb = info.probabilities.col(static_cast<Eigen::Index>(cats[static_cast<std::size_t>(b)])).array();
            const Eigen::VectorXd w = a == b ? Eigen::VectorXd(pa * (1.0 - pa)) : Eigen::VectorXd(-pa * pb);
            const Eigen::MatrixXd block = x.transpose() * w.asDiagonal() * x;
            info.information.block(a * q, b * q, q, q) = block;
            if (a != b) info.information.block(b * q, a * q, q, q) = block.transpose();
        }
    }
    return info;
}

} // namespace

std::string_view to_string(Family f) {
    switch (f) {
    case Family::Multinomial:
        return "multinomial";
    case Family::GlmGaussian:
        return "glm_gaussian";
    case Family::GlmPoisson:
        return "glm_poisson";
    }
    return "multinomial";
}

double FitResult::coefficient(std::string_view row, std::string_view term) const {
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        if (row_names[r] != row) continue;
        for (std::size_t t = 0; t < term_names.size(); ++t) {
            if (term_names[t] == term) return coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
        }
    }
    throw Error("no coefficient for '" + std::string(row) + "', '" + std::string(term) + "'");
}

double FitResult::std_error(std::string_view row, std::string_view term) const {
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        if (row_names[r] != row) continue;
        for (std::size_t t = 0; t < term_names.size(); ++t) {
            if (term_names[t] == term) return std_errors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
        }
    }
    throw Error("no standard error for '" + std::string(row) + "', '" + std::string(term) + "'");
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd out(x.rows(), x.cols() + 1);
    out.col(0).setOnes();
    out.rightCols(x.cols()) = x;
    return out;
}

double two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

// ---- multinomial ------------------------------------------------------------

Eigen::MatrixXd multinomial_probabilities(const Eigen::MatrixXd& x, const Eigen::VectorXd& theta,
                                          std::size_t categories, std::size_t reference) {
    const Eigen::Index n = x.rows();
    const Eigen::Index q = x.cols();
    Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(categories));
    Eigen::Index block = 0;
    for (std::size_t k = 0; k < categories; ++k) {
        if (k == reference) continue;
        eta.col(static_cast<Eigen::Index>(k)) = x * theta.segment(block * q, q);
        ++block;
    }
    const Eigen::VectorXd row_max = eta.rowwise().maxCoeff();
    Eigen::MatrixXd p = (eta.colwise() - row_max).array().exp().matrix();
    const Eigen::VectorXd total = p.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) p.row(i) /= total(i);
    return p;
}

double multinomial_log_likelihood(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& theta,
                                  std::size_t categories, std::size_t reference) {
    const Eigen::Index q = x.cols();
    double ll = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        double max_eta = 0.0;  // the reference category contributes eta = 0
        std::vector<double> eta(categories, 0.0);
        Eigen::Index block = 0;
        for (std::size_t k = 0; k < categories; ++k) {
            if (k == reference) continue;
            eta[k] = x.row(i).dot(theta.segment(block * q, q));
            max_eta = std::max(max_eta, eta[k]);
            ++block;
        }
        double sum = 0.0;
        for (double e : eta) sum += std::exp(e - max_eta);
        ll += eta[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] - max_eta - std::log(sum);
    }
    return ll;
}

Eigen::VectorXd multinomial_gradient(const Eigen::MatrixXd& x, const std::vector<int>& y,
                                     const Eigen::VectorXd& theta, std::size_t categories, std::size_t reference) {
    const Eigen::MatrixXd p = multinomial_probabilities(x, theta, categories, reference);
    const Eigen::Index q = x.cols();
    Eigen::VectorXd g(theta.size());
    Eigen::Index block = 0;
    for (std::size_t k = 0; k < categories; ++k) {
        if (k == reference) continue;
        Eigen::VectorXd resid(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            resid(i) = (y[static_cast<std::size_t>(i)] == static_cast<int>(k) ? 1.0 : 0.0) - p(i, static_cast<Eigen::Index>(k));
        }
        g.segment(block * q, q) = x.transpose() * resid;
        ++block;
    }
    return g;
}

FitResult fit_multinomial(const DesignMatrix& m, const MultinomialOptions& options) {
    validate(m);
    const std::size_t k_total = m.category_names.size();
    if (k_total < 2) throw DegenerateMatrix("multinomial response needs at least two categories");
    if (m.categories.size() != static_cast<std::size_t>(m.rows())) {
        throw DegenerateMatrix("response has " + std::to_string(m.categories.size()) + " labels for " +
                               std::to_string(m.rows()) + " rows");
    }
    const auto ref_it = std::find(m.category_names.begin(), m.category_names.end(), options.reference);
    if (ref_it == m.category_names.end()) throw DegenerateMatrix("reference category '" + options.reference + "' is unknown");
    const auto reference = static_cast<std::size_t>(ref_it - m.category_names.begin());

    std::vector<std::size_t> counts(k_total, 0);
    for (int c : m.categories) {
        if (c < 0 || static_cast<std::size_t>(c) >= k_total) throw DegenerateMatrix("response label out of range");
        ++counts[static_cast<std::size_t>(c)];
    }
    const auto p = static_cast<std::size_t>(m.cols());
    for (std::size_t k = 0; k < k_total; ++k) {
        if (counts[k] < p + 1) {
            throw DegenerateMatrix("category '" + m.category_names[k] + "' has " + std::to_string(counts[k]) +
                                   " rows; at least " + std::to_string(p + 1) + " are needed");
        }
    }

    const Scaling scaling = Scaling::of(m.x);
    const Eigen::MatrixXd x = with_intercept(scaling.apply(m.x));
    const Eigen::Index q = x.cols();
    const auto n = static_cast<double>(m.rows());

    // Start at the intercept-only optimum.
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k_total - 1) * q);
    {
        Eigen::Index block = 0;
        for (std::size_t k = 0; k < k_total; ++k) {
            if (k == reference) continue;
            theta(block * q) = std::log(static_cast<double>(counts[k]) / static_cast<double>(counts[reference]));
            ++block;
        }
    }

    FitResult fit;
    fit.family = Family::Multinomial;
    fit.link = "softmax";
    fit.response_transform = "none";
    fit.term_names = term_names_for(m);
    fit.row_names = m.category_names;
    fit.reference = options.reference;
    fit.observations = static_cast<std::size_t>(m.rows());

    Information info = multinomial_information(x, m.categories, theta, k_total, reference);
    fit.log_likelihood_history.push_back(info.log_likelihood);
    while (true) {
        fit.gradient_max_norm = info.gradient.cwiseAbs().maxCoeff() / n;
        if (fit.gradient_max_norm <= options.tolerance) {
            fit.converged = true;
            break;
        }
        if (fit.iterations >= options.max_iterations) break;

        Eigen::LDLT<Eigen::MatrixXd> ldlt(info.information);
        if (ldlt.info() != Eigen::Success) throw DegenerateMatrix("information matrix is singular");
        const Eigen::VectorXd step = ldlt.solve(info.gradient);
        if (!step.allFinite()) throw DegenerateMatrix("information matrix is singular");

        double t = 1.0;
        bool accepted = false;
        Eigen::VectorXd candidate;
        double candidate_ll = 0.0;
        for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
            candidate = theta + t * step;
            candidate_ll = multinomial_log_likelihood(x, m.categories, candidate, k_total, reference);
            if (std::isfinite(candidate_ll) && candidate_ll >= info.log_likelihood) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++fit.iterations;
        theta = candidate;
        if (theta.cwiseAbs().maxCoeff() > options.separation_bound) {
            throw SeparationError("coefficients diverge (|beta| > " + format_number(options.separation_bound) +
                                  " on standardized predictors): the categories are separated by the predictors; "
                                  "remove or merge the separating predictors, or use more data");
        }
        info = multinomial_information(x, m.categories, theta, k_total, reference);
        fit.log_likelihood_history.push_back(info.log_likelihood);
    }

    double min_fitted = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        min_fitted = std::min(min_fitted, info.probabilities(i, m.categories[static_cast<std::size_t>(i)]));
    }
    if (min_fitted > 1.0 - 1e-6) {
        throw SeparationError("every observation is fitted with probability above 1 - 1e-6: the categories are "
                              "perfectly separated by the predictors");
    }

    const Eigen::MatrixXd cov_std = symmetric_inverse(info.information, "information matrix");
    const Eigen::MatrixXd t_map = scaling.transform();
    const auto free = static_cast<Eigen::Index>(k_total - 1);
    Eigen::MatrixXd big_t = Eigen::MatrixXd::Zero(free * q, free * q);
    for (Eigen::Index b = 0; b < free; ++b) big_t.block(b * q, b * q, q, q) = t_map;
    const Eigen::VectorXd theta_raw = big_t * theta;
    const Eigen::MatrixXd cov_raw = big_t * cov_std * big_t.transpose();

    const auto k_rows = static_cast<Eigen::Index>(k_total);
    fit.coefficients = Eigen::MatrixXd::Zero(k_rows, q);
    fit.std_errors = Eigen::MatrixXd::Constant(k_rows, q, kNaN);
    Eigen::Index block = 0;
    for (std::size_t k = 0; k < k_total; ++k) {
        if (k == reference) continue;
        const auto row = static_cast<Eigen::Index>(k);
        fit.coefficients.row(row) = theta_raw.segment(block * q, q).transpose();
        for (Eigen::Index j = 0; j < q; ++j) fit.std_errors(row, j) = std::sqrt(cov_raw(block * q + j, block * q + j));
        ++block;
    }
    fill_wald(fit);

    fit.log_likelihood = info.log_likelihood;
    fit.null_log_likelihood = 0.0;
    for (std::size_t c : counts) fit.null_log_likelihood += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
    fit.aic = -2.0 * fit.log_likelihood + 2.0 * static_cast<double>(free * q);
    fit.pseudo_r2 = 1.0 - fit.log_likelihood / fit.null_log_likelihood;
    return fit;
}

// ---- GLM --------------------------------------------------------------------

FitResult fit_glm(const DesignMatrix& m, const GlmOptions& options) {
    if (options.family == Family::Multinomial) throw ConfigError("fit_glm needs a Gaussian or Poisson family");
    validate(m);
    if (m.response.size() != m.rows()) {
        throw DegenerateMatrix("response has " + std::to_string(m.response.size()) + " values for " +
                               std::to_string(m.rows()) + " rows");
    }
    if (!m.response.allFinite()) throw DegenerateMatrix("response contains missing or non-finite values");

    Eigen::VectorXd y = m.response;
    if (options.transform == ResponseTransform::Log1p) {
        if ((y.array() <= -1.0).any()) throw DegenerateMatrix("log1p transform needs responses above -1");
        y = y.array().log1p().matrix();
    }
    if ((y.array() == y(0)).all()) {
        throw DegenerateMatrix("response is constant (every value is " + format_number(y(0)) + "); nothing to model");
    }
    if (options.family == Family::GlmPoisson && (y.array() < 0.0).any()) {
        throw DegenerateMatrix("Poisson family needs a non-negative response");
    }

    const Scaling scaling = Scaling::of(m.x);
    const Eigen::MatrixXd x = with_intercept(scaling.apply(m.x));
    const Eigen::Index q = x.cols();
    const Eigen::Index n_rows = x.rows();
    const auto n = static_cast<double>(n_rows);

    FitResult fit;
    fit.family = options.family;
    fit.response_transform = options.transform == ResponseTransform::Log1p ? "log1p" : "none";
    fit.term_names = term_names_for(m);
    fit.row_names = {std::string(to_string(options.family))};
    fit.observations = static_cast<std::size_t>(n_rows);

    Eigen::VectorXd beta(q);
    Eigen::MatrixXd cov_std;

    if (options.family == Family::GlmGaussian) {
        fit.link = "identity";
        // Identity link with unit weights: IRLS converges in one weighted
        // least-squares step, i.e. ordinary least squares.
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
        if (qr.rank() < q) throw DegenerateMatrix("design matrix is rank deficient");
        beta = qr.solve(y);
        const Eigen::VectorXd resid = y - x * beta;
        const double rss = resid.squaredNorm();
        const double tss = (y.array() - y.mean()).square().sum();
        fit.iterations = 1;
        const Eigen::VectorXd normal = x.transpose() * resid;
        const double scale = std::max(1.0, (x.transpose() * y).cwiseAbs().maxCoeff());
        fit.gradient_max_norm = normal.cwiseAbs().maxCoeff() / scale;
        fit.converged = fit.gradient_max_norm <= options.tolerance;
        fit.dispersion = rss / (n - static_cast<double>(q));
        cov_std = fit.dispersion * symmetric_inverse(x.transpose() * x, "X'X");
        auto gaussian_ll = [n](double ss) {
            return ss > 0.0 ? -0.5 * n * (std::log(2.0 * M_PI * ss / n) + 1.0) : kInf;
        };
        fit.log_likelihood = gaussian_ll(rss);
        fit.null_log_likelihood = gaussian_ll(tss);
        fit.log_likelihood_history = {fit.null_log_likelihood, fit.log_likelihood};
        fit.aic = -2.0 * fit.log_likelihood + 2.0 * static_cast<double>(q + 1);
    } else {
        fit.link = "log";
        auto poisson_ll = [&](const Eigen::VectorXd& eta) {
            double ll = 0.0;
            for (Eigen::Index i = 0; i < n_rows; ++i) {
                const double mu = std::exp(eta(i));
                ll += (y(i) > 0.0 ? y(i) * eta(i) : 0.0) - mu - std::lgamma(y(i) + 1.0);
            }
            return ll;
        };
        beta.setZero();
        beta(0) = std::log(y.mean());
        Eigen::VectorXd eta = x * beta;
        double ll = poisson_ll(eta);
        fit.null_log_likelihood = ll;
        fit.log_likelihood_history.push_back(ll);
        while (true) {
            const Eigen::VectorXd mu = eta.array().exp().matrix();
            const Eigen::VectorXd gradient = x.transpose() * (y - mu);
            fit.gradient_max_norm = gradient.cwiseAbs().maxCoeff() / n;
            if (fit.gradient_max_norm <= options.tolerance) {
                fit.converged = true;
                break;
            }
            if (fit.iterations >= options.max_iterations) break;

            // Weighted least squares on the working response.
            const Eigen::VectorXd sw = mu.array().sqrt().matrix();
            const Eigen::VectorXd z = eta + ((y - mu).array() / mu.array()).matrix();
            const Eigen::MatrixXd xw = sw.asDiagonal() * x;
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xw);
            if (qr.rank() < q) throw DegenerateMatrix("weighted design matrix is rank deficient");
            const Eigen::VectorXd target = qr.solve((sw.array() * z.array()).matrix());
            const Eigen::VectorXd step = target - beta;

            double t = 1.0;
            bool accepted = false;
            for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
                const Eigen::VectorXd cand = beta + t * step;
                const Eigen::VectorXd cand_eta = x * cand;
                const double cand_ll = poisson_ll(cand_eta);
                if (std::isfinite(cand_ll) && cand_ll >= ll) {
                    beta = cand;
                    eta = cand_eta;
                    ll = cand_ll;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            ++fit.iterations;
            fit.log_likelihood_history.push_back(ll);
        }
        const Eigen::VectorXd mu = eta.array().exp().matrix();
        cov_std = symmetric_inverse(x.transpose() * mu.asDiagonal() * x, "Fisher information");
        fit.log_likelihood = ll;
        fit.dispersion = 1.0;
        fit.aic = -2.0 * fit.log_likelihood + 2.0 * static_cast<double>(q);
    }

    const Eigen::MatrixXd t_map = scaling.transform();
    const Eigen::VectorXd beta_raw = t_map * beta;
    const Eigen::MatrixXd cov_raw = t_map * cov_std * t_map.transpose();
    fit.coefficients = beta_raw.transpose();
    fit.std_errors.resize(1, q);
    for (Eigen::Index j = 0; j < q; ++j) fit.std_errors(0, j) = std::sqrt(std::max(0.0, cov_raw(j, j)));
    fill_wald(fit);
    fit.pseudo_r2 = kNaN;
    return fit;
}

// ---- output -----------------------------------------------------------------

namespace {

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

} // namespace

std::string fit_to_json(const FitResult& fit, int indent) {
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(fit.family));
    j["link"] = fit.link;
    j["response_transform"] = fit.response_transform;
    if (fit.family == Family::Multinomial) j["reference"] = fit.reference;
    j["observations"] = fit.observations;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["gradient_max_norm"] = number(fit.gradient_max_norm);
    j["log_likelihood"] = number(fit.log_likelihood);
    j["null_log_likelihood"] = number(fit.null_log_likelihood);
    j["aic"] = number(fit.aic);
    j["pseudo_r2"] = number(fit.pseudo_r2);
    if (fit.family == Family::GlmGaussian) j["dispersion"] = number(fit.dispersion);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < fit.row_names.size(); ++r) {
        const auto rr = static_cast<Eigen::Index>(r);
        nlohmann::ordered_json row;
        row["name"] = fit.row_names[r];
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < fit.term_names.size(); ++t) {
            const auto tt = static_cast<Eigen::Index>(t);
            nlohmann::ordered_json term;
            term["term"] = fit.term_names[t];
            term["estimate"] = number(fit.coefficients(rr, tt));
            term["std_error"] = number(fit.std_errors(rr, tt));
            term["z_value"] = number(fit.z_values(rr, tt));
            term["p_value"] = number(fit.p_values(rr, tt));
            terms.push_back(std::move(term));
        }
        row["terms"] = std::move(terms);
        rows.push_back(std::move(row));
    }
    j["coefficients"] = std::move(rows);
    return j.dump(indent);
}

void write_fit_table(std::ostream& out, const FitResult& fit) {
    out << "family: " << std::string(to_string(fit.family)) << " (link " << fit.link;
    if (fit.family == Family::Multinomial) out << ", reference " << fit.reference;
    if (fit.response_transform != "none") out << ", response " << fit.response_transform;
    out << ")\n";
    out << "observations: " << fit.observations << "  iterations: " << fit.iterations
        << "  converged: " << (fit.converged ? "yes" : "no") << "\n";
    out << "log-likelihood: " << format_number(fit.log_likelihood) << "  null: " << format_number(fit.null_log_likelihood)
        << "  AIC: " << format_number(fit.aic);
    if (fit.family == Family::Multinomial) out << "  McFadden R2: " << format_number(fit.pseudo_r2);
    out << "\n\n";

    std::size_t row_w = 5;
    std::size_t term_w = 4;
    for (const auto& r : fit.row_names) row_w = std::max(row_w, r.size());
    for (const auto& t : fit.term_names) term_w = std::max(term_w, t.size());
    constexpr int kNum = 14;
    out << std::left << std::setw(static_cast<int>(row_w)) << "row" << "  " << std::setw(static_cast<int>(term_w))
        << "term" << std::right << std::setw(kNum) << "estimate" << std::setw(kNum) << "std.error" << std::setw(kNum)
        << "z" << std::setw(kNum) << "p" << "\n";
    for (std::size_t r = 0; r < fit.row_names.size(); ++r) {
        if (fit.family == Family::Multinomial && fit.row_names[r] == fit.reference) continue;
        for (std::size_t t = 0; t < fit.term_names.size(); ++t) {
            const auto rr = static_cast<Eigen::Index>(r);
            const auto tt = static_cast<Eigen::Index>(t);
            out << std::left << std::setw(static_cast<int>(row_w)) << fit.row_names[r] << "  "
                << std::setw(static_cast<int>(term_w)) << fit.term_names[t] << std::right << std::setw(kNum)
                << format_number(fit.coefficients(rr, tt)) << std::setw(kNum) << format_number(fit.std_errors(rr, tt))
                << std::setw(kNum) << format_number(fit.z_values(rr, tt)) << std::setw(kNum)
                << format_number(fit.p_values(rr, tt)) << "\n";
        }
    }
}

} // namespace reusemine::stats
