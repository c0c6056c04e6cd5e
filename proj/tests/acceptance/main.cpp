#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reusemine/app/artifacts.hpp"
#include "reusemine/app/commands.hpp"
#include "reusemine/app/config.hpp"
#include "reusemine/history.hpp"
#include "reusemine/stats/collinearity.hpp"
#include "reusemine/stats/cooccurrence.hpp"
#include "reusemine/stats/models.hpp"
#include "reusemine/stats/trend.hpp"
#include "support/java_fixtures.hpp"
#include "support/metric_oracle.hpp"
#include "support/metric_runner.hpp"
#include "support/scripted_repo.hpp"
#include "support/stat_samples.hpp"

namespace {

using namespace reusemine;
using namespace reusemine::testing;
using Eigen::MatrixXd;
using Eigen::VectorXd;

class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream s;
        s << what << ": got " << got << ", want " << want << " +/- " << tol;
        expect(std::abs(got - want) <= tol, s.str());
    }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t metric(const std::map<std::string, OracleVector>& m, const std::string& cls, std::size_t index) {
    const auto it = m.find(cls);
    return it == m.end() ? static_cast<std::size_t>(-1) : it->second[index];
}

void worked_examples(Checks& c) {
    const auto start = std::chrono::steady_clock::now();

    // A implements B and C, and C extends D.
    const std::vector<SourceFile> spec = {
        {"ex/B.java", "package ex;\npublic interface B { void b(); }\n"},
        {"ex/C.java", "package ex;\npublic interface C extends D { void c(); }\n"},
        {"ex/D.java", "package ex;\npublic interface D { void d(); }\n"},
        {"ex/A.java", "package ex;\npublic class A implements B, C {\n"
                      "    public void b() {}\n    public void c() {}\n    public void d() {}\n}\n"},
    };
    c.expect(metric(library_metrics(spec), "ex.A", 0) == 3, "specification inheritance of A is not 3");

    // B declares bar(); one of A's methods calls it.
    const std::string b = "package ex;\npublic class B {\n    public void bar() {}\n}\n";
    const std::vector<SourceFile> without = {
        {"ex/B.java", b},
        {"ex/A.java", "package ex;\npublic class A extends B {\n    void one() {}\n    void two() {}\n}\n"},
    };
    const std::vector<SourceFile> with = {
        {"ex/B.java", b},
        {"ex/A.java", "package ex;\npublic class A extends B {\n    void one() { bar(); }\n    void two() {}\n}\n"},
    };
    const std::size_t impl_without = metric(library_metrics(without), "ex.A", 1);
    const std::size_t impl_with = metric(library_metrics(with), "ex.A", 1);
    c.expect(impl_without == 0, "implementation inheritance without the bar() call is not 0");
    c.expect(impl_with == 1, "implementation inheritance with the bar() call is not 1");

    // Only the project-typed variable counts; the Checkbox from an external
    // library and the value-typed variables do not.
    const std::vector<SourceFile> delegation = {
        {"ex/Printer.java", "package ex;\npublic class Printer {\n    public void print(String s) {}\n}\n"},
        {"ex/A.java", "package ex;\nimport java.awt.Checkbox;\npublic class A {\n"
                      "    private Printer printer = new Printer();\n"
                      "    private Checkbox box = new Checkbox();\n"
                      "    private int count;\n    private String name = \"a\";\n"
                      "    void run() {\n        printer.print(name);\n        box.setState(true);\n"
                      "        count++;\n    }\n}\n"},
    };
    const auto lib = library_metrics(delegation);
    c.expect(metric(lib, "ex.A", 2) == 1, "delegation of A is not 1");
    c.expect(lib == oracle_metrics(delegation), "delegation example disagrees with the oracle");
    c.expect(library_metrics(spec) == oracle_metrics(spec), "specification example disagrees with the oracle");
    c.expect(library_metrics(with) == oracle_metrics(with), "bar() example disagrees with the oracle");

    c.expect(seconds_since(start) < 1.0, "worked examples took 1 s or more");
}

void metric_oracle_suite(Checks& c) {
    const auto& fixtures = metric_fixtures();
    c.expect(fixtures.size() >= 20, "fewer than 20 fixtures");
    std::array<bool, kMetricCount> covered{};
    for (const JavaFixture& fx : fixtures) {
        const auto lib = library_metrics(fx.files);
        c.expect(lib.size() <= 6, fx.name + " declares more than 6 types");
        c.expect(lib == oracle_metrics(fx.files), fx.name + ": library and oracle disagree");
        for (const std::string& m : fixture_mismatches(fx)) c.expect(false, fx.name + ": " + m);
        for (const auto& [name, values] : lib) {
            for (std::size_t k = 0; k < kMetricCount; ++k) covered[k] = covered[k] || values[k] > 0;
        }
    }
    for (std::size_t k = 0; k < kMetricCount; ++k) {
        c.expect(covered[k], "no fixture exercises " + std::string(kMetricNames[k]));
    }
}

void multinomial_recovery(Checks& c) {
    MatrixXd beta(2, 4);
    beta << -0.5, 0.8, -0.4, 0.3, -0.2, -0.6, 0.5, 0.7;
    const stats::DesignMatrix m = softmax_sample(10000, beta, 20240501);
    const auto start = std::chrono::steady_clock::now();
    const stats::FitResult fit = stats::fit_multinomial(m);
    c.expect(seconds_since(start) < 10.0, "fit took 10 s or more");
    c.expect(fit.converged, "fit did not converge");
    const std::vector<std::string> rows = {"decrease", "increase"};
    for (int r = 0; r < 2; ++r) {
        for (int t = 0; t < 4; ++t) {
            const double b = fit.coefficient(rows[r], fit.term_names[t]);
            const double se = fit.std_error(rows[r], fit.term_names[t]);
            c.near(b, beta(r, t), 3 * se, rows[r] + " " + fit.term_names[t]);
        }
    }

    const MatrixXd x = stats::with_intercept(m.x);
    VectorXd theta(8);
    theta << fit.coefficients.row(0).transpose(), fit.coefficients.row(2).transpose();
    const MatrixXd p = stats::multinomial_probabilities(x, theta, 3, 1);
    c.expect(((p.rowwise().sum().array() - 1.0).abs() <= 1e-12).all(), "probabilities do not sum to 1");

    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    for (int point = 0; point < 20; ++point) {
        VectorXd at(8);
        for (Eigen::Index k = 0; k < 8; ++k) at(k) = 0.5 * normal(rng);
        const VectorXd g = stats::multinomial_gradient(x, m.categories, at, 3, 1);
        VectorXd fd(8);
        for (Eigen::Index k = 0; k < 8; ++k) {
            const double h = 1e-5;
            VectorXd up = at, down = at;
            up(k) += h;
            down(k) -= h;
            fd(k) = (stats::multinomial_log_likelihood(x, m.categories, up, 3, 1) -
                     stats::multinomial_log_likelihood(x, m.categories, down, 3, 1)) /
                    (2 * h);
        }
        c.expect((g - fd).cwiseAbs().maxCoeff() <= 1e-5 * g.cwiseAbs().maxCoeff(),
                 "gradient differs from finite differences at point " + std::to_string(point));
    }
}

void glm_exactness(Checks& c) {
    VectorXd x(50), y(50);
    for (Eigen::Index i = 0; i < 50; ++i) {
        x(i) = 0.37 * static_cast<double>(i) - 4.0;
        y(i) = 1.0 + 2.0 * x(i);
    }
    stats::DesignMatrix line;
    line.x = x;
    line.column_names = {"x"};
    line.response = y;
    const auto fit = stats::fit_glm(line);
    c.near(fit.coefficients(0, 0), 1.0, 1e-8, "intercept");
    c.near(fit.coefficients(0, 1), 2.0, 1e-8, "slope");
    const MatrixXd xi = stats::with_intercept(line.x);
    const VectorXd closed = (xi.transpose() * xi).inverse() * (xi.transpose() * y);
    c.near(fit.coefficients(0, 0), closed(0), 1e-10, "intercept against closed form");
    c.near(fit.coefficients(0, 1), closed(1), 1e-10, "slope against closed form");

    VectorXd beta(4);
    beta << 0.4, 0.3, -0.25, 0.15;
    stats::GlmOptions opts;
    opts.family = stats::Family::GlmPoisson;
    const auto pois = stats::fit_glm(poisson_sample(20000, beta, 424242), opts);
    c.expect(pois.converged, "Poisson fit did not converge");
    for (Eigen::Index t = 0; t < 4; ++t) {
        c.near(pois.coefficients(0, t), beta(t), 3 * pois.std_errors(0, t), "Poisson " + pois.term_names[t]);
    }
}

void vif_correctness(Checks& c) {
    const auto v = stats::compute_vif(equicorrelated(50000, 0.5, 17));
    for (std::size_t j = 0; j < v.vif.size(); ++j) c.near(v.vif[j], 1.5, 0.05, "VIF of " + v.column_names[j]);

    const auto base = equicorrelated(2000, 0.3, 21);
    const VectorXd loc = equicorrelated(2000, 0.0, 22).x.col(0);
    const std::vector<std::string> reuse = {"spec_inheritance", "impl_inheritance", "delegation"};
    const auto m = with_columns({"spec_inheritance", "impl_inheritance", "delegation", "loc", "loc_copy"},
                                {base.x.col(0), base.x.col(1), base.x.col(2), loc, loc});
    const auto dv = stats::compute_vif(m);
    c.expect(dv.exactly_collinear[3] && dv.exactly_collinear[4], "duplicate column not flagged");
    const auto s = stats::screen_collinearity(m, 10.0, reuse);
    c.expect(s.removals.size() == 1, "screening did not remove exactly one column");
    c.expect(!s.removals.empty() && (s.removals[0].column == "loc" || s.removals[0].column == "loc_copy"),
             "screening removed something other than a copy of the duplicate");
    for (const auto& r : reuse) c.expect(s.matrix.column_index(r) >= 0, "reuse predictor " + r + " was removed");

    const auto shadow = with_columns({"spec_inheritance", "impl_inheritance", "delegation", "dit"},
                                     {base.x.col(0), base.x.col(1), base.x.col(2), 2.0 * base.x.col(0)});
    const auto ss = stats::screen_collinearity(shadow, 10.0, reuse);
    c.expect(ss.removals.size() == 1 && ss.removals[0].column == "dit",
             "a control collinear with a reuse predictor was not the one removed");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void end_to_end_mining(Checks& c) {
    TempDir dir("acceptance");
    const MiningScenario scenario = build_mining_scenario(dir / "repo");
    write_file(dir / "ledger.csv", scenario.ledger_csv);

    app::RunConfig config;
    config.repo_path = dir / "repo";
    config.bug_ledger_path = dir / "ledger.csv";
    config.output_dir = dir / "out";

    std::map<std::string, std::string> runs[2];
    for (auto& run : runs) {
        const auto result = app::run_command(app::Command::Mine, config);
        c.expect(result.exit_code == 0, "mine exited with " + std::to_string(result.exit_code));
        for (const std::string& rel : app::list_artifacts(config.output_dir)) {
            run[rel] = slurp(config.output_dir + "/" + rel);
        }
        run["manifest.txt"] = slurp(config.output_dir + "/manifest.txt");
    }
    c.expect(runs[0] == runs[1], "two runs are not byte-identical");

    std::istringstream panel_csv(runs[0]["panel.csv"]);
    const auto rows = read_panel_csv(panel_csv);
    c.expect(rows.size() == 19, "panel has " + std::to_string(rows.size()) + " rows, want 19");
    for (std::size_t k = 0; k < rows.size() && k < 19; ++k) {
        const std::string at = "row " + std::to_string(k + 1);
        c.expect(rows[k].churn == scenario.hand_churn[k], at + ": churn differs from the scripted diff size");
        c.expect(rows[k].churn == scenario.java_added[k + 1] + scenario.java_deleted[k + 1],
                 at + ": churn differs from the script's line counts");
        c.expect(std::string(to_string(rows[k].label)) == scenario.hand_labels[k], at + ": label differs");
    }

    const auto report = stats::reuse_defect_cooccurrence(rows);
    std::vector<stats::CooccurrenceCounts> tables(report.per_metric.begin(), report.per_metric.end());
    tables.push_back(report.any);
    tables.push_back(report.all);
    for (const auto& t : tables) {
        c.expect(t.total() == rows.size(), "co-occurrence cells do not sum to the row count");
        c.expect(t.inducing_with_variation + t.inducing_without_variation == 2,
                 "co-occurrence inducing cells do not hold the two bug-introducing commits");
    }
}

void trend_statistics(Checks& c) {
    std::vector<double> up(10);
    for (int i = 0; i < 10; ++i) up[i] = i * 1.5 + 2;
    const auto t = stats::trend_summary(up);
    c.near(t.spearman_rho, 1.0, 1e-12, "Spearman rho of a monotone series");
    c.near(t.mann_kendall_s, 45.0, 0.0, "Mann-Kendall S of a monotone series");
    c.near(stats::trend_summary({1, 3, 2, 4}).mann_kendall_s, 4.0, 0.0, "Mann-Kendall S of [1,3,2,4]");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Checks&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "worked examples reproduced exactly", worked_examples},
        {2, "metric oracle suite", metric_oracle_suite},
        {3, "multinomial recovery", multinomial_recovery},
        {4, "GLM exactness", glm_exactness},
        {5, "VIF correctness", vif_correctness},
        {6, "end-to-end mining", end_to_end_mining},
        {7, "trend statistics", trend_statistics},
    };
    int failed = 0;
    for (const Criterion& cr : criteria) {
        Checks checks;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(checks);
        } catch (const std::exception& e) {
            checks.expect(false, std::string("exception: ") + e.what());
        }
        const bool pass = checks.failures().empty();
        failed += pass ? 0 : 1;
        std::printf("%s criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", cr.id, cr.title, seconds_since(start));
        for (const std::string& f : checks.failures()) std::printf("    %s\n", f.c_str());
    }
    return failed == 0 ? 0 : 1;
}
