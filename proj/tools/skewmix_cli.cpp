// skewmix: density evaluation, exact sampling, mixture fitting, clustering
// and the structural verification suites, from one reproducible binary.
//
// Exit codes: 0 success, 1 numerical or fit failure, 2 usage/schema error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewmix/data.hpp"
#include "skewmix/density.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/gh.hpp"
#include "skewmix/mixture.hpp"
#include "skewmix/sample.hpp"
#include "skewmix/verify.hpp"
#include "json_io.hpp"

namespace {

using namespace skewmix;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw parse_error("cannot open for writing: " + out_path);
    out << content;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// density dispatch including the symmetric GH family, which has no skewness
// matrix and therefore no SkewParams record
struct DensityEvaluator {
    bool is_gh = false;
    SkewParams params = SkewParams::cfusn(Eigen::VectorXd::Zero(1), SpdMatrix::identity(1),
                                          Eigen::MatrixXd::Zero(1, 1));
    Eigen::VectorXd gh_mu;
    SpdMatrix gh_sigma;
    GigParams gh_mixing{1.0, 1.0, 0.0};
    double tol = 1e-8;

    int p() const { return is_gh ? static_cast<int>(gh_mu.size()) : params.p(); }

    double operator()(const Eigen::VectorXd& y) const {
        if (is_gh) return gh_sym_logpdf(y, gh_mu, gh_sigma, gh_mixing);
        return skew_logpdf(y, params, tol);
    }
};

DensityEvaluator load_density_evaluator(const std::string& params_path, double tol) {
    const std::string text = read_file(params_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON in ") + params_path + ": " + e.what());
    }
    DensityEvaluator ev;
    ev.tol = tol;
    const std::string family = j.value("family", "");
    if (family == "gh") {
        const int p = j.at("p").get<int>();
        const auto mu = j.at("mu").get<std::vector<double>>();
        const auto sig = j.at("sigma").get<std::vector<double>>();
        if (static_cast<int>(mu.size()) != p || static_cast<int>(sig.size()) != p * p) {
            throw parse_error("gh params: mu/sigma lengths do not match p");
        }
        ev.is_gh = true;
        ev.gh_mu = Eigen::Map<const Eigen::VectorXd>(mu.data(), p);
        Eigen::MatrixXd s(p, p);
        for (int i = 0; i < p; ++i)
            for (int jj = 0; jj < p; ++jj) s(i, jj) = sig[i * p + jj];
        ev.gh_sigma = SpdMatrix(s);
        const auto& m = j.at("mixing");
        ev.gh_mixing = GigParams(m.at("psi").get<double>(), m.at("chi").get<double>(),
                                 m.at("lambda").get<double>());
        return ev;
    }
    ev.params = skew_params_from_json_obj(j);
    return ev;
}

int cmd_density(const std::string& params_path, const std::string& points_path,
                const std::string& out_path, double tol) {
    const DensityEvaluator ev = load_density_evaluator(params_path, tol);
    const DataMatrix pts = load_csv(points_path);
    if (pts.p() != ev.p()) {
        throw parse_error("points have " + std::to_string(pts.p()) + " columns, params need " +
                          std::to_string(ev.p()));
    }
    std::string out = "log_density\n";
    for (int i = 0; i < pts.n(); ++i) {
        out += format_value(ev(pts.values.row(i).transpose())) + "\n";
    }
    write_output(out_path, out);
    return 0;
}

int cmd_sample(const std::string& params_path, int n, std::uint64_t seed,
               const std::string& out_path) {
    const SkewParams params = skew_params_from_json(read_file(params_path));
    Rng rng(seed);
    const Eigen::MatrixXd draws = skew_sample(rng, params, n);
    std::string out;
    for (int j = 0; j < params.p(); ++j) out += (j ? ",x" : "x") + std::to_string(j);
    out += "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < params.p(); ++j) {
            if (j) out += ",";
            out += format_value(draws(i, j));
        }
        out += "\n";
    }
    write_output(out_path, out);
    return 0;
}

struct FitArgs {
    std::string data_path;
    std::string label_column;
    int g = 2;
    std::string family = "cfust";
    std::string kind = "full";
    std::string init = "kmeans";
    bool do_standardize = false;
    std::uint64_t seed = 20190101;
    int n_starts = 4;
    int max_iter = 500;
    double tol = 1e-6;
    std::string out_path;
    std::string report_path;
    bool with_responsibilities = false;
};

int run_fit(const FitArgs& args, bool cluster_mode) {
    DataMatrix raw = load_csv(args.data_path,
                              args.label_column.empty()
                                  ? std::optional<std::string>{}
                                  : std::optional<std::string>{args.label_column});
    DataMatrix data = args.do_standardize ? standardize(raw) : raw;

    FitOptions opts;
    opts.seed = args.seed;
    opts.n_starts = args.n_starts;
    opts.max_iter = args.max_iter;
    opts.tol_loglik = args.tol;
    opts.init = init_from_name(args.init);

    FitReport report = fit_em(data, args.g, family_from_name(args.family),
                              kind_from_name(args.kind), opts);
    if (args.do_standardize) {
        report.model = destandardize_model(report.model, *data.column_means, *data.column_sds);
    }

    if (!args.report_path.empty()) {
        write_output(args.report_path, fit_report_to_json(report, args.with_responsibilities));
    }

    if (cluster_mode) {
        const std::vector<int> labels = map_assign(report.responsibilities);
        if (!args.out_path.empty()) write_labels_csv(args.out_path, labels);
        std::string summary = "n_iter=" + std::to_string(report.n_iter) +
                              " converged=" + (report.converged ? "true" : "false") +
                              " loglik=" + format_value(report.final_loglik()) +
                              " bic=" + format_value(report.bic);
        if (raw.labels) {
            summary += " ari=" + format_value(ari(labels, *raw.labels));
        }
        std::cout << summary << "\n";
    } else if (args.report_path.empty()) {
        write_output(args.out_path, fit_report_to_json(report, args.with_responsibilities));
    }
    return report.converged || cluster_mode ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    std::vector<std::string> names;
    if (suite.empty() || suite == "all") {
        names = verify_suite_names();
    } else {
        names.push_back(suite);
    }
    std::vector<SuiteResult> results;
    bool pass = true;
    for (const auto& name : names) {
        results.push_back(run_verify_suite(name, seed));
        pass = pass && results.back().pass;
        std::cerr << (results.back().pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    }
    write_output(out_path, suites_to_json(results) + "\n");
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew distribution toolbox: densities, samplers, mixture clustering"};
    app.require_subcommand(1);

    std::string params_path, points_path, out_path = "-";
    std::uint64_t seed = 20190101;
    double tol = 1e-6;
    int n = 1000;

    auto* density = app.add_subcommand("density", "log densities for points in a CSV");
    density->add_option("--params", params_path, "JSON parameter file")->required();
    density->add_option("--data,--points", points_path, "CSV of evaluation points")->required();
    density->add_option("--out", out_path, "output path (default stdout)");
    density->add_option("--tol", tol, "quadrature tolerance");

    auto* sample = app.add_subcommand("sample", "draw from a skew distribution");
    sample->add_option("--params", params_path, "JSON parameter file")->required();
    sample->add_option("--n", n, "number of draws");
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--out", out_path, "output path (default stdout)");

    FitArgs fit_args;
    auto add_fit_options = [&](CLI::App* cmd) {
        cmd->add_option("--data", fit_args.data_path, "CSV data file")->required();
        cmd->add_option("--labels", fit_args.label_column, "label column name");
        cmd->add_option("--g", fit_args.g, "number of components")->required();
        cmd->add_option("--family", fit_args.family, "cfusn|cfust")
            ->check(CLI::IsMember({"cfusn", "cfust"}));
        cmd->add_option("--kind", fit_args.kind, "full|restricted|diagonal")
            ->check(CLI::IsMember({"full", "restricted", "diagonal"}));
        cmd->add_option("--init", fit_args.init, "kmeans|normal|random|legacy-constant")
            ->check(CLI::IsMember({"kmeans", "normal", "random", "legacy-constant"}));
        cmd->add_flag("--standardize", fit_args.do_standardize, "z-score the features first");
        cmd->add_option("--seed", fit_args.seed, "RNG seed");
        cmd->add_option("--starts", fit_args.n_starts, "independent EM starts");
        cmd->add_option("--max-iter", fit_args.max_iter, "EM iteration cap");
        cmd->add_option("--tol", fit_args.tol, "relative loglik tolerance");
        cmd->add_option("--report", fit_args.report_path, "FitReport JSON path");
        cmd->add_flag("--responsibilities", fit_args.with_responsibilities,
                      "include responsibilities in the report");
    };

    auto* fit = app.add_subcommand("fit", "EM fit of a skew mixture");
    add_fit_options(fit);
    fit->add_option("--out", fit_args.out_path, "report path when --report is not given");

    auto* cluster = app.add_subcommand("cluster", "fit, assign MAP labels, report ARI");
    add_fit_options(cluster);
    cluster->add_option("--out", fit_args.out_path, "labels CSV path");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "structural verification suites");
    verify->add_option("--suite", suite,
                       "identifiability|gig_limit|hth_limit|reductions|normalization|all");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--out", out_path, "JSON report path (default stdout)");

    try {
        app.parse(argc, argv);
        if (density->parsed()) return cmd_density(params_path, points_path, out_path, tol);
        if (sample->parsed()) return cmd_sample(params_path, n, seed, out_path);
        if (fit->parsed()) return run_fit(fit_args, false);
        if (cluster->parsed()) return run_fit(fit_args, true);
        if (verify->parsed()) return cmd_verify(suite == "all" ? "" : suite, seed, out_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const skewmix::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const skewmix::contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const skewmix::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
