#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace plcut {

/// Square sparse matrix in compressed-row form; columns sorted within a row.
class CsrMatrix {
public:
    struct Triplet {
        std::uint32_t row;
        std::uint32_t col;
        double value;
    };

    CsrMatrix() = default;

    /**
     * Builds a symmetric matrix: every triplet (i, j, v) contributes to both
     * (i, j) and (j, i), and repeated contributions to one entry keep the
     * maximum. Entries that end up exactly zero are not stored.
     */
    static CsrMatrix symmetric_from_triplets(std::size_t n, std::span<const Triplet> triplets);

    /// Keeps every nonzero of a dense square matrix as is (no symmetrization).
    static CsrMatrix from_dense(const Eigen::MatrixXd& dense);

    /// Assembles from already sorted rows. Used by the kernel builders.
    CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> cols,
              std::vector<double> values);

    std::size_t size() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
    std::size_t nnz() const noexcept { return cols_.size(); }

    std::span<const std::uint32_t> cols(std::size_t i) const {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> values(std::size_t i) const {
        return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    /// Entry lookup by binary search; zero when not stored.
    double at(std::size_t i, std::size_t j) const;
    double row_sum(std::size_t i) const;
    bool is_symmetric(double tol) const;
    Eigen::MatrixXd to_dense() const;

private:
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

/// Undirected graph with nonnegative weights and cached degrees.
class WeightedGraph {
public:
    struct Edge {
        std::uint32_t u;
        std::uint32_t v;
        double weight = 1.0;
    };

    WeightedGraph() = default;

    /**
     * Symmetrizes by max: the stored weight of {u, v} is the largest weight
     * given for either orientation. Self-loops are kept. Throws InvalidInput
     * on negative or non-finite weights and out-of-range ids.
     */
    static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges);

    /// Symmetrizes a dense matrix by max(A_ij, A_ji).
    static WeightedGraph from_dense(const Eigen::MatrixXd& adjacency);

    std::size_t size() const noexcept { return adjacency_.size(); }
    const CsrMatrix& adjacency() const noexcept { return adjacency_; }
    std::span<const std::uint32_t> neighbors(std::size_t i) const { return adjacency_.cols(i); }
    std::span<const double> neighbor_weights(std::size_t i) const { return adjacency_.values(i); }
    double weight(std::size_t i, std::size_t j) const { return adjacency_.at(i, j); }
    double degree(std::size_t i) const { return degrees_[i]; }
    std::span<const double> degrees() const noexcept { return degrees_; }
    double total_weight() const;

    /// Each undirected edge once (u <= v), self-loops included.
    std::vector<Edge> edges() const;

    /// Subgraph on `nodes` (in the given order); node r of the result is nodes[r].
    WeightedGraph induced(std::span<const std::size_t> nodes) const;

    /// Copy in which every zero-degree node gets a self-loop of weight `w`.
    WeightedGraph with_isolated_self_loops(double w = 1.0) const;
    std::size_t isolated_count() const;

private:
    explicit WeightedGraph(CsrMatrix adjacency);

    CsrMatrix adjacency_;
    std::vector<double> degrees_;
};

} // namespace plcut
