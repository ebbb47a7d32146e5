#include "subclust/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "subclust/metrics.hpp"

namespace subclust::io {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

template <class T>
T require(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

std::size_t require_count(const json& j, const char* key) {
    const auto v = require<long long>(j, key);
    if (v < 0) throw ConfigError(std::string("field '") + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

const char* hausdorff_name(HausdorffKind kind) {
    return kind == HausdorffKind::directed ? "directed" : "symmetric";
}

}  // namespace

Matrix parse_csv_matrix(std::string_view text) {
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        std::size_t fields = 0;
        while (true) {
            const auto comma = line.find(',');
            const std::string_view field = trim(line.substr(0, comma));
            double v = 0.0;
            const char* end = field.data() + field.size();
            auto [ptr, ec] = std::from_chars(field.data(), end, v);
            if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
                throw CsvError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                               "' is not a finite number");
            }
            values.push_back(v);
            ++fields;
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (rows == 0) {
            cols = fields;
        } else if (fields != cols) {
            throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                           " fields, found " + std::to_string(fields));
        }
        ++rows;
    }
    if (rows == 0) throw CsvError("no data rows");
    return Matrix(rows, cols, std::move(values));
}

Matrix read_csv_matrix(const std::filesystem::path& path) { return parse_csv_matrix(slurp(path)); }

std::vector<int> parse_label_csv(std::string_view text) {
    const Matrix m = parse_csv_matrix(text);
    if (m.cols() != 1) throw CsvError("label file must have exactly one column");
    std::vector<int> labels;
    labels.reserve(m.rows());
    for (double v : m.values()) {
        if (v != std::floor(v) || v < 1.0 || v > 1e9) throw CsvError("labels must be positive integers");
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

std::vector<int> read_label_csv(const std::filesystem::path& path) { return parse_label_csv(slurp(path)); }

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_csv(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::string_view what) {
    if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + ": expected a non-empty array of rows");
    std::vector<double> values;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.empty()) throw ConfigError(std::string(what) + ": rows must be non-empty arrays");
        if (i == 0) cols = row.size();
        if (row.size() != cols) throw ConfigError(std::string(what) + ": ragged rows");
        for (const auto& v : row) {
            if (!v.is_number()) throw ConfigError(std::string(what) + ": entries must be numbers");
            values.push_back(v.get<double>());
        }
    }
    return Matrix(j.size(), cols, std::move(values));
}

json fit_to_json(std::string_view method, const FitResult& fit) {
    json j;
    j["method"] = method;
    j["k"] = fit.centroids.k();
    j["q"] = fit.loading.q();
    j["seed"] = fit.seed;
    j["loss"] = fit.loss;
    j["iterations"] = fit.iterations;
    j["restarts_used"] = fit.restarts_used;
    j["center"] = fit.center;
    j["loading"] = matrix_to_json(fit.loading.values());
    j["centroids"] = matrix_to_json(fit.centroids.values());
    j["labels"] = fit.labels.one_based();
    return j;
}

json kmeans_to_json(const KMeansResult& fit, std::size_t p, std::uint64_t seed) {
    json j;
    j["method"] = "kmeans";
    j["k"] = fit.centroids.k();
    j["q"] = p;
    j["seed"] = seed;
    j["loss"] = fit.loss;
    j["iterations"] = fit.iterations;
    j["restarts_used"] = fit.restarts_used;
    j["center"] = std::vector<double>(p, 0.0);
    j["loading"] = nullptr;
    j["centroids"] = matrix_to_json(fit.centroids.values());
    j["labels"] = fit.labels.one_based();
    return j;
}

Population parse_population(const json& j) {
    if (!j.is_object()) throw ConfigError("population must be an object");
    const auto type = require<std::string>(j, "type");
    try {
        if (type == "scenario") {
            return paper_scenario_population(
                optional_field<std::size_t>(j, "k", ScenarioDefaults::k),
                optional_field<double>(j, "separation", ScenarioDefaults::separation),
                optional_field<std::size_t>(j, "noise_dims", ScenarioDefaults::noise_dims),
                optional_field<double>(j, "noise_sd", ScenarioDefaults::noise_sd));
        }
        if (type == "mixture") {
            MixturePopulation pop;
            pop.weights = require<std::vector<double>>(j, "weights");
            pop.means = matrix_from_json(j.at("means"), "means");
            pop.cluster_sd = optional_field<double>(j, "cluster_sd", 1.0);
            pop.noise_sd = optional_field<double>(j, "noise_sd", 1.0);
            pop.informative_dims = optional_field<std::size_t>(j, "informative_dims", pop.means.cols());
            pop.validate();
            return pop;
        }
        if (type == "discrete") {
            if (!j.contains("atoms")) throw ConfigError("missing field 'atoms'");
            DiscretePopulation pop;
            pop.atoms = matrix_from_json(j.at("atoms"), "atoms");
            pop.probs = require<std::vector<double>>(j, "probs");
            pop.validate();
            return pop;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("population: ") + e.what());
    }
    throw ConfigError("population type must be 'scenario', 'mixture' or 'discrete'");
}

ConsistencyJob parse_consistency_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const auto kind = require<std::string>(j, "kind");
    if (!j.contains("population")) throw ConfigError("missing field 'population'");
    Population population = parse_population(j.at("population"));

    if (kind == "theorem1") {
        ConsistencyConfig cfg;
        cfg.population = std::move(population);
        cfg.k = require_count(j, "k");
        cfg.q = require_count(j, "q");
        cfg.sample_sizes = require<std::vector<std::size_t>>(j, "sample_sizes");
        cfg.replications = optional_field<int>(j, "replications", 30);
        cfg.reference_n = optional_field<std::size_t>(j, "reference_n", 100000);
        cfg.reference_restarts = optional_field<int>(j, "reference_restarts", 200);
        cfg.seed = optional_field<std::uint64_t>(j, "seed", 0);
        cfg.identification_margin = optional_field<double>(j, "identification_margin", 1e-6);
        cfg.require_identification = optional_field<bool>(j, "require_identification", true);
        const auto h = optional_field<std::string>(j, "hausdorff", "symmetric");
        if (h == "symmetric") {
            cfg.hausdorff = HausdorffKind::symmetric;
        } else if (h == "directed") {
            cfg.hausdorff = HausdorffKind::directed;
        } else {
            throw ConfigError("hausdorff must be 'symmetric' or 'directed'");
        }
        if (j.contains("fit")) {
            const json& f = j.at("fit");
            if (!f.is_object()) throw ConfigError("'fit' must be an object");
            cfg.fit.restarts = optional_field<int>(f, "restarts", cfg.fit.restarts);
            cfg.fit.max_iter = optional_field<int>(f, "max_iter", cfg.fit.max_iter);
            cfg.fit.tol = optional_field<double>(f, "tol", cfg.fit.tol);
            cfg.fit.center_columns = optional_field<bool>(f, "center_columns", cfg.fit.center_columns);
        }
        try {
            cfg.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        return cfg;
    }
    if (kind == "slln") {
        auto* discrete = std::get_if<DiscretePopulation>(&population);
        if (discrete == nullptr) throw ConfigError("slln requires a discrete population");
        SllnJob job{*discrete, {}, {}, 1};
        job.check.k = optional_field<std::size_t>(j, "k", 2);
        job.check.q = optional_field<std::size_t>(j, "q", 2);
        job.check.grid_size = optional_field<std::size_t>(j, "grid_size", 100);
        job.check.ball_radius = optional_field<double>(j, "ball_radius", 5.0);
        job.check.sample_sizes = require<std::vector<std::size_t>>(j, "sample_sizes");
        job.check.seed = optional_field<std::uint64_t>(j, "seed", 0);
        job.loss.exponent = optional_field<double>(j, "loss_exponent", 2.0);
        job.runs = optional_field<int>(j, "runs", 1);
        if (job.runs < 1) throw ConfigError("runs must be >= 1");
        try {
            job.check.validate(job.population.p());
            job.loss.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        return job;
    }
    throw ConfigError("kind must be 'theorem1' or 'slln'");
}

json report_to_json(const ConsistencyReport& report) {
    json j;
    j["kind"] = "theorem1";
    j["seed"] = report.seed;
    j["replications"] = report.replications;
    j["hausdorff"] = hausdorff_name(report.hausdorff);
    j["reference_loss"] = report.reference_loss;
    j["identification"] = {{"risks", report.identification.risks},
                           {"margin", report.identification.margin},
                           {"passed", report.identification.passed}};
    if (report.reference) {
        j["reference"] = {{"loading", matrix_to_json(report.reference->loading.values())},
                          {"centroids", matrix_to_json(report.reference->centroids.values())}};
    }
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"loss_mean", r.loss_mean},
                        {"loss_sd", r.loss_sd},
                        {"distance_mean", r.distance_mean},
                        {"distance_sd", r.distance_sd},
                        {"ari_mean", r.ari_mean},
                        {"losses", r.losses},
                        {"distances", r.distances},
                        {"aris", r.aris}});
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string report_to_csv(const ConsistencyReport& report) {
    std::string out = "n,loss_mean,loss_sd,distance_mean,distance_sd,ari_mean\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.n) + ',' + format_double(r.loss_mean) + ',' + format_double(r.loss_sd) + ',' +
               format_double(r.distance_mean) + ',' + format_double(r.distance_sd) + ',' +
               format_double(r.ari_mean) + '\n';
    }
    return out;
}

bool strictly_decreasing(const std::vector<SllnRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].sup_gap < rows[i - 1].sup_gap)) return false;
    return true;
}

json slln_to_json(const SllnJob& job, const std::vector<SllnRun>& runs) {
    json j;
    j["kind"] = "slln";
    j["seed"] = job.check.seed;
    j["k"] = job.check.k;
    j["q"] = job.check.q;
    j["grid_size"] = job.check.grid_size;
    j["ball_radius"] = job.check.ball_radius;
    j["loss_exponent"] = job.loss.exponent;
    json arr = json::array();
    std::size_t decreasing = 0;
    double slope_sum = 0.0;
    std::size_t slopes = 0;
    for (const auto& run : runs) {
        json rows = json::array();
        bool positive = true;
        for (const auto& r : run.rows) {
            rows.push_back({{"n", r.n}, {"sup_gap", r.sup_gap}});
            positive = positive && r.sup_gap > 0.0;
        }
        const bool dec = strictly_decreasing(run.rows);
        decreasing += dec ? 1 : 0;
        json entry = {{"seed", run.seed}, {"rows", std::move(rows)}, {"strictly_decreasing", dec}};
        if (positive && run.rows.size() >= 2) {
            const double slope = log_log_slope(run.rows);
            entry["slope"] = slope;
            slope_sum += slope;
            ++slopes;
        } else {
            entry["slope"] = nullptr;
        }
        arr.push_back(std::move(entry));
    }
    j["runs"] = std::move(arr);
    j["fraction_strictly_decreasing"] = runs.empty() ? 0.0 : static_cast<double>(decreasing) / static_cast<double>(runs.size());
    if (slopes > 0) {
        j["mean_slope"] = slope_sum / static_cast<double>(slopes);
    } else {
        j["mean_slope"] = nullptr;
    }
    return j;
}

std::string slln_to_csv(const std::vector<SllnRun>& runs) {
    std::string out = "run,seed,n,sup_gap\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (const auto& r : runs[i].rows) {
            out += std::to_string(i) + ',' + std::to_string(runs[i].seed) + ',' + std::to_string(r.n) + ',' +
                   format_double(r.sup_gap) + '\n';
        }
    }
    return out;
}

}  // namespace subclust::io
