#include "subclust/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subclust/consistency.hpp"
#include "subclust/error.hpp"
#include "subclust/fkm.hpp"
#include "subclust/io.hpp"
#include "subclust/kmeans.hpp"
#include "subclust/metrics.hpp"
#include "subclust/random.hpp"
#include "subclust/rkm.hpp"
#include "subclust/synthdata.hpp"
#include "subclust/tandem.hpp"

namespace subclust {
namespace {

using nlohmann::json;

struct FitArgs {
    std::string method;
    std::string input;
    std::size_t k = 0;
    std::optional<std::size_t> q;
    int restarts = 50;
    std::uint64_t seed = 0;
    int max_iter = 500;
    double tol = 1e-10;
    bool no_center = false;
    std::string output;
};

struct SynthArgs {
    std::size_t n = ScenarioDefaults::n;
    std::size_t k = ScenarioDefaults::k;
    double separation = ScenarioDefaults::separation;
    std::size_t noise_dims = ScenarioDefaults::noise_dims;
    double noise_sd = ScenarioDefaults::noise_sd;
    std::uint64_t seed = 0;
    std::string output;
    std::string truth;
};

struct CompareArgs {
    std::string input;
    std::string truth;
    std::size_t k = 0;
    std::size_t q = 0;
    int restarts = 50;
    std::uint64_t seed = 0;
    std::string output;
};

struct ConsistencyArgs {
    std::string config;
    std::string output;
    std::string csv;
};

// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        io::write_text(path, text);
    }
}

AlsConfig als_config(const FitArgs& a, std::size_t q) {
    AlsConfig cfg;
    cfg.k = a.k;
    cfg.q = q;
    cfg.restarts = a.restarts;
    cfg.seed = a.seed;
    cfg.max_iter = a.max_iter;
    cfg.tol = a.tol;
    cfg.center_columns = !a.no_center;
    return cfg;
}

KMeansConfig kmeans_config(std::size_t k, int restarts, std::uint64_t seed, int max_iter, double tol) {
    KMeansConfig cfg;
    cfg.k = k;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.max_iter = max_iter;
    cfg.tol = tol;
    return cfg;
}

// Plain k-means on the (optionally centered) data, reported in the fit layout.
json run_kmeans(const DataMatrix& x, const KMeansConfig& cfg, bool center, Membership* labels_out = nullptr) {
    const std::vector<double> means = center ? x.column_means() : std::vector<double>(x.p(), 0.0);
    const Matrix y = center ? x.shifted(means).values() : x.values();
    const KMeansResult res = kmeans_fit(y, cfg);
    json j = io::kmeans_to_json(res, x.p(), cfg.seed);
    j["center"] = means;
    if (labels_out != nullptr) *labels_out = res.labels;
    return j;
}

json run_method(const std::string& method, const DataMatrix& x, const FitArgs& a, Membership* labels_out) {
    if (method == "kmeans") {
        return run_kmeans(x, kmeans_config(a.k, a.restarts, a.seed, a.max_iter, a.tol), !a.no_center, labels_out);
    }
    if (!a.q) throw UsageError("--q is required for method " + method);
    std::optional<FitResult> fit;
    if (method == "fkm") {
        fit.emplace(fkm_fit(x, als_config(a, *a.q)));
    } else if (method == "rkm") {
        fit.emplace(rkm_fit(x, als_config(a, *a.q)));
    } else {
        if (*a.q >= x.p()) throw InfeasibleError("tandem: need q < p");
        fit.emplace(tandem_fit(x, a.k, *a.q, kmeans_config(a.k, a.restarts, a.seed, a.max_iter, a.tol)));
    }
    if (labels_out != nullptr) *labels_out = fit->labels;
    return io::fit_to_json(method, *fit);
}

DataMatrix load_data(const std::string& path) { return DataMatrix(io::read_csv_matrix(path)); }

int cmd_fit(const FitArgs& a, std::ostream& out) {
    const DataMatrix x = load_data(a.input);
    if (a.k < 1 || x.n() < a.k) throw InfeasibleError("fit: need 1 <= k <= n");
    const json j = run_method(a.method, x, a, nullptr);
    emit(a.output, j.dump(2) + "\n", out);
    return exit_ok;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    const Sample s = generate_paper_scenario(a.n, a.k, a.separation, a.noise_dims, a.seed, a.noise_sd);
    emit(a.output, io::format_csv(s.data.values()), out);
    if (!a.truth.empty()) {
        std::string labels;
        for (int v : s.truth.one_based()) labels += std::to_string(v) + '\n';
        io::write_text(a.truth, labels);
    }
    return exit_ok;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    const DataMatrix x = load_data(a.input);
    const std::vector<int> truth_labels = io::read_label_csv(a.truth);
    if (truth_labels.size() != x.n()) throw io::CsvError("truth file has a different number of rows than the data");
    std::size_t truth_k = 0;
    for (int v : truth_labels) truth_k = std::max(truth_k, static_cast<std::size_t>(v));
    const Membership truth = Membership::from_one_based(truth_labels, truth_k);
    if (a.k < 1 || x.n() < a.k) throw InfeasibleError("compare: need 1 <= k <= n");
    if (a.q < 1 || a.q >= x.p()) throw InfeasibleError("compare: need 1 <= q < p");

    FitArgs fa;
    fa.k = a.k;
    fa.q = a.q;
    fa.restarts = a.restarts;
    fa.seed = a.seed;

    json methods = json::array();
    for (const char* method : {"fkm", "rkm", "tandem", "kmeans"}) {
        Membership labels({0}, 1);
        const auto start = std::chrono::steady_clock::now();
        const json fit = run_method(method, x, fa, &labels);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        methods.push_back({{"method", method},
                           {"loss", fit["loss"]},
                           {"ari", adjusted_rand_index(labels, truth)},
                           {"wall_time_seconds", elapsed.count()},
                           {"iterations", fit["iterations"]},
                           {"labels", fit["labels"]}});
    }
    json report = {{"n", x.n()}, {"p", x.p()}, {"k", a.k}, {"q", a.q}, {"seed", a.seed}, {"methods", methods}};
    emit(a.output, report.dump(2) + "\n", out);
    return exit_ok;
}

int cmd_consistency(const ConsistencyArgs& a, std::ostream& out) {
    json config;
    {
        std::ifstream in(a.config);
        if (!in) throw io::ConfigError("cannot open " + a.config);
        try {
            config = json::parse(in);
        } catch (const json::parse_error& e) {
            throw io::ConfigError(std::string("invalid JSON: ") + e.what());
        }
    }
    const io::ConsistencyJob job = io::parse_consistency_config(config);
    if (const auto* t1 = std::get_if<ConsistencyConfig>(&job)) {
        const ConsistencyReport report = run_consistency(*t1);
        emit(a.output, io::report_to_json(report).dump(2) + "\n", out);
        if (!a.csv.empty()) io::write_text(a.csv, io::report_to_csv(report));
        return exit_ok;
    }
    const auto& slln = std::get<io::SllnJob>(job);
    std::vector<io::SllnRun> runs;
    for (int r = 0; r < slln.runs; ++r) {
        SllnCheckConfig check = slln.check;
        check.seed = derive_seed(slln.check.seed, static_cast<std::uint64_t>(r));
        runs.push_back({check.seed, run_slln_check(slln.population, check, slln.loss)});
    }
    emit(a.output, io::slln_to_json(slln, runs).dump(2) + "\n", out);
    if (!a.csv.empty()) io::write_text(a.csv, io::slln_to_csv(runs));
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Subspace clustering: factorial and reduced k-means"};
    app.require_subcommand(1);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit one method to a CSV data file");
    fit_cmd->add_option("--method", fit.method, "fkm, rkm, tandem or kmeans")
        ->required()
        ->check(CLI::IsMember({"fkm", "rkm", "tandem", "kmeans"}));
    fit_cmd->add_option("--input", fit.input, "Headerless CSV, one object per row")->required();
    fit_cmd->add_option("--k", fit.k, "Number of clusters")->required();
    fit_cmd->add_option("--q", fit.q, "Subspace dimension");
    fit_cmd->add_option("--restarts", fit.restarts)->check(CLI::PositiveNumber);
    fit_cmd->add_option("--seed", fit.seed);
    fit_cmd->add_option("--max-iter", fit.max_iter)->check(CLI::PositiveNumber);
    fit_cmd->add_option("--tol", fit.tol)->check(CLI::NonNegativeNumber);
    fit_cmd->add_flag("--no-center", fit.no_center, "Do not center the columns");
    fit_cmd->add_option("--output", fit.output, "Result JSON (stdout if omitted)");

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate the two-informative-variable mixture scenario");
    synth_cmd->add_option("--n", synth.n)->check(CLI::PositiveNumber);
    synth_cmd->add_option("--k", synth.k)->check(CLI::PositiveNumber);
    synth_cmd->add_option("--separation", synth.separation)->check(CLI::NonNegativeNumber);
    synth_cmd->add_option("--noise-dims", synth.noise_dims);
    synth_cmd->add_option("--noise-sd", synth.noise_sd)->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed", synth.seed);
    synth_cmd->add_option("--output", synth.output, "Data CSV (stdout if omitted)");
    synth_cmd->add_option("--truth", synth.truth, "One-column CSV of 1-based generating labels");

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand("compare", "Run fkm, rkm, tandem and kmeans on the same data");
    compare_cmd->add_option("--input", compare.input)->required();
    compare_cmd->add_option("--truth", compare.truth)->required();
    compare_cmd->add_option("--k", compare.k)->required();
    compare_cmd->add_option("--q", compare.q)->required();
    compare_cmd->add_option("--restarts", compare.restarts)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--seed", compare.seed);
    compare_cmd->add_option("--output", compare.output, "Report JSON (stdout if omitted)");

    ConsistencyArgs consistency;
    auto* consistency_cmd = app.add_subcommand("consistency", "Run a large-sample consistency experiment");
    consistency_cmd->add_option("--config", consistency.config, "JSON config with kind theorem1 or slln")->required();
    consistency_cmd->add_option("--output", consistency.output, "Report JSON (stdout if omitted)");
    consistency_cmd->add_option("--csv", consistency.csv, "Also write the summary table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_arguments;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit, out);
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*compare_cmd) return cmd_compare(compare, out);
        return cmd_consistency(consistency, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_arguments;
    } catch (const io::ConfigError& e) {
        err << "error: invalid config: " << e.what() << "\n";
        return exit_bad_arguments;
    } catch (const io::CsvError& e) {
        err << "error: malformed CSV: " << e.what() << "\n";
        return exit_bad_csv;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_arguments;
    } catch (const InfeasibleError& e) {
        err << "error: infeasible fit: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const DimensionError& e) {
        err << "error: infeasible fit: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const IdentificationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_not_identified;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace subclust
