#pragma once

// File formats used by the command-line tool.
//
// CSV: headerless, comma-separated, one object per row, '.' decimal point.
// Label files hold one 1-based label per line.
// JSON documents are described by the schemas under schemas/.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subclust/consistency.hpp"
#include "subclust/core_model.hpp"
#include "subclust/kmeans.hpp"

namespace subclust::io {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid JSON configuration (missing or mistyped field, bad value).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Matrix parse_csv_matrix(std::string_view text);
Matrix read_csv_matrix(const std::filesystem::path& path);
std::vector<int> parse_label_csv(std::string_view text);
std::vector<int> read_label_csv(const std::filesystem::path& path);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
std::string format_csv(const Matrix& m);
void write_text(const std::filesystem::path& path, std::string_view text);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, std::string_view what);

/// {method, k, q, seed, loss, iterations, restarts_used, center, loading,
/// centroids, labels}; loading and centroids as arrays of rows, labels 1-based.
nlohmann::json fit_to_json(std::string_view method, const FitResult& fit);

/// Same layout for plain k-means on the raw data: loading is null, q = p.
nlohmann::json kmeans_to_json(const KMeansResult& fit, std::size_t p, std::uint64_t seed);

struct SllnJob {
    DiscretePopulation population;
    SllnCheckConfig check;
    LossSpec loss;
    /// Independent repetitions; run r uses seed derive_seed(check.seed, r).
    int runs = 1;
};

using ConsistencyJob = std::variant<ConsistencyConfig, SllnJob>;

/// Parses a config whose "kind" is "theorem1" or "slln". Throws ConfigError.
ConsistencyJob parse_consistency_config(const nlohmann::json& j);
Population parse_population(const nlohmann::json& j);

nlohmann::json report_to_json(const ConsistencyReport& report);
std::string report_to_csv(const ConsistencyReport& report);

struct SllnRun {
    std::uint64_t seed = 0;
    std::vector<SllnRow> rows;
};
nlohmann::json slln_to_json(const SllnJob& job, const std::vector<SllnRun>& runs);
std::string slln_to_csv(const std::vector<SllnRun>& runs);

/// True when every consecutive pair of rows has a strictly smaller sup-gap.
bool strictly_decreasing(const std::vector<SllnRow>& rows);

}  // namespace subclust::io
