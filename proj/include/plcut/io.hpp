#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plcut/graph.hpp"
#include "plcut/graphcuts.hpp"
#include "plcut/metrics.hpp"
#include "plcut/partition.hpp"
#include "plcut/solver.hpp"

namespace plcut {

inline constexpr int kResultSchemaVersion = 1;

/**
 * Edge list: one "u v [w]" per line, 0-based ids, w defaults to 1, '#' starts
 * a comment. n = max id + 1. Repeated pairs keep the larger weight.
 * Throws ParseError (with line) on malformed lines or a file without edges,
 * InvalidInput on negative weights.
 */
WeightedGraph parse_edge_list(std::istream& in);
WeightedGraph load_edge_list(const std::filesystem::path& path);

/// Writes each undirected edge once with 17 significant digits.
void save_edge_list(const std::filesystem::path& path, const WeightedGraph& g);

struct CsvVectors {
    VectorDataset data;
    std::optional<Partition> labels;
    std::vector<std::string> label_names; ///< label string of each cluster id
};

/**
 * Numeric CSV, optionally with a final label column (any string). A header
 * row is not supported. Throws ParseError with row and column on ragged rows
 * or non-numeric cells. `normalize` rescales every feature to [0, 1].
 */
CsvVectors parse_csv_vectors(std::istream& in, bool has_labels, bool normalize = false);
CsvVectors load_csv_vectors(const std::filesystem::path& path, bool has_labels, bool normalize = false);

void save_csv_vectors(const std::filesystem::path& path, const VectorDataset& data,
                      const Partition* labels = nullptr);

/// One integer label per line, '#' comments allowed.
Partition load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const Partition& p);

/// Writes to a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Two-column "rank<TAB>size" table.
void write_rank_size_tsv(const std::filesystem::path& path, const SizeHistogram& h);

/// Assignments, traces, k, seed and convergence data of a run.
nlohmann::json run_json(const RunResult& r);
/// Convention tags written into every result file.
nlohmann::json conventions_json();
/// Current UTC time, ISO 8601. The only nondeterministic field in result files.
std::string utc_timestamp();

} // namespace plcut
