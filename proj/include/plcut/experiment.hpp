#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plcut/datagen.hpp"
#include "plcut/errors.hpp"
#include "plcut/graph.hpp"
#include "plcut/graphcuts.hpp"
#include "plcut/partition.hpp"
#include "plcut/solver.hpp"

namespace plcut {

/// Graph or vectors, with optional ground truth.
struct Dataset {
    std::optional<WeightedGraph> graph;
    std::optional<VectorDataset> vectors;
    std::optional<Partition> truth;

    std::size_t size() const;
    /// Rows / nodes `idx`, in that order.
    Dataset subset(std::span<const std::size_t> idx) const;
};

struct InputSpec {
    std::string kind = "edge-list"; ///< edge-list | csv | pycrp-sbm | blobs
    std::string path;
    std::string labels;             ///< optional ground truth for edge lists
    bool has_labels = false;        ///< csv: last column holds labels
    bool normalize = false;         ///< csv: min-max each feature to [0, 1]
    SbmSpec sbm;
    std::size_t blobs_n = 200;
    std::size_t blobs_d = 2;
    double blobs_alpha = 1.0;
    double blobs_theta = 0.3;
    double blobs_std = 0.05;
    double blobs_box = 10.0;
    std::uint64_t blobs_seed = 0;
};

struct ExperimentConfig {
    InputSpec input;
    /// Separate validation data. When unset, `split` carves it out of `input`.
    std::optional<InputSpec> validation;
    double split = 0.0;               ///< fraction held out for validation; 0 validates on the data itself
    std::string objective = "ncut";   ///< ncut | rcut | rassoc | vectors
    std::optional<double> rho;        ///< unset = AUTO
    double sigma = 0.0;               ///< Gaussian kernel width for vectors -> graph; 0 = median distance
    Sparsify sparsify;
    std::string isolated = "error";   ///< error | self-loop (zero-degree nodes under ncut)
    std::vector<double> lambdas{1.0};
    std::vector<double> alphas{1.0};
    std::vector<double> thetas{0.0};
    std::size_t max_sweeps = 100;
    VisitOrder order = VisitOrder::kFixed;
    std::size_t restarts = 1;
    std::string baseline = "auto";    ///< auto | kkm | kmeans | none
    std::size_t baseline_k = 0;       ///< 0 = ground-truth k, else the selected run's k
    std::filesystem::path output = "results";
    std::uint64_t seed = 0;
    std::size_t threads = 0;          ///< 0 = hardware concurrency

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    /// Throws InvalidInput; also checks that referenced files exist.
    void validate() const;
};

/// Raised for a failure inside one grid cell; the message names the cell.
class CellError : public Error {
public:
    CellError(std::size_t cell, const std::string& what) : Error(what), cell_(cell) {}
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

Dataset load_input(const InputSpec& spec);

/// "none", "knn:K" or "eps:T".
Sparsify parse_sparsify(const std::string& text);

struct CellResult {
    std::size_t index = 0;
    PYParams params;
    std::size_t k = 0;
    std::optional<double> nmi;
    double objective = 0.0;
    std::size_t sweeps = 0;
    bool converged = false;
};

/// Tie rule: smallest |k - k_true|, then higher NMI, then lower index. Without truth: lower index.
std::size_t select_cell(const std::vector<CellResult>& cells, std::optional<std::size_t> k_true);

struct ExperimentOutcome {
    nlohmann::json result;  ///< also written to <output>/result.json
    std::vector<CellResult> cells;
    std::size_t selected = 0;
};

/**
 * Grid search on the validation data, then one run with the selected cell on
 * the clustering data, plus the baseline. Writes one JSON per cell,
 * result.json and rank_size.tsv under config.output.
 */
ExperimentOutcome run_experiment(const ExperimentConfig& config);

} // namespace plcut
