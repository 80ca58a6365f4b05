#include "plcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "plcut/errors.hpp"

namespace plcut {

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                     std::vector<std::uint32_t> cols, std::vector<double> values)
    : row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
    if (row_ptr_.size() != n + 1 || cols_.size() != values_.size() || row_ptr_.back() != cols_.size())
        throw InvalidInput("inconsistent CSR arrays");
}

CsrMatrix CsrMatrix::symmetric_from_triplets(std::size_t n, std::span<const Triplet> triplets) {
    // Collect both orientations, sort, then merge duplicates with max.
    std::vector<Triplet> all;
    all.reserve(2 * triplets.size());
    for (const auto& t : triplets) {
        if (t.row >= n || t.col >= n) throw InvalidInput("matrix index out of range");
        all.push_back(t);
        if (t.row != t.col) all.push_back({t.col, t.row, t.value});
    }
    std::sort(all.begin(), all.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    cols.reserve(all.size());
    values.reserve(all.size());
    for (std::size_t a = 0; a < all.size();) {
        std::size_t b = a;
        double v = all[a].value;
        while (++b < all.size() && all[b].row == all[a].row && all[b].col == all[a].col)
            v = std::max(v, all[b].value);
        if (v != 0.0) {
            cols.push_back(all[a].col);
            values.push_back(v);
            ++row_ptr[all[a].row + 1];
        }
        a = b;
    }
    for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
    return CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(values));
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& dense) {
    if (dense.rows() != dense.cols()) throw InvalidInput("matrix must be square");
    const auto n = static_cast<std::size_t>(dense.rows());
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (v == 0.0) continue;
            cols.push_back(static_cast<std::uint32_t>(j));
            values.push_back(v);
        }
        row_ptr[i + 1] = cols.size();
    }
    return CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(values));
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    const auto c = cols(i);
    const auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(j));
    if (it == c.end() || *it != j) return 0.0;
    return values_[row_ptr_[i] + static_cast<std::size_t>(it - c.begin())];
}

double CsrMatrix::row_sum(std::size_t i) const {
    double s = 0.0;
    for (double v : values(i)) s += v;
    return s;
}

bool CsrMatrix::is_symmetric(double tol) const {
    for (std::size_t i = 0; i < size(); ++i) {
        const auto c = cols(i);
        const auto v = values(i);
        for (std::size_t e = 0; e < c.size(); ++e)
            if (std::abs(v[e] - at(c[e], i)) > tol * std::max(1.0, std::abs(v[e]))) return false;
    }
    return true;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < size(); ++i) {
        const auto c = cols(i);
        const auto v = values(i);
        for (std::size_t e = 0; e < c.size(); ++e) out(static_cast<Eigen::Index>(i), c[e]) = v[e];
    }
    return out;
}

WeightedGraph::WeightedGraph(CsrMatrix adjacency) : adjacency_(std::move(adjacency)) {
    degrees_.resize(adjacency_.size());
    for (std::size_t i = 0; i < degrees_.size(); ++i) degrees_[i] = adjacency_.row_sum(i);
}

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<CsrMatrix::Triplet> triplets;
    triplets.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") out of range for " + std::to_string(n) + " nodes");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") has invalid weight " + std::to_string(e.weight));
        triplets.push_back({e.u, e.v, e.weight});
    }
    return WeightedGraph(CsrMatrix::symmetric_from_triplets(n, triplets));
}

WeightedGraph WeightedGraph::from_dense(const Eigen::MatrixXd& adjacency) {
    if (adjacency.rows() != adjacency.cols()) throw InvalidInput("adjacency must be square");
    const auto n = static_cast<std::size_t>(adjacency.rows());
    std::vector<Edge> edges;
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
        for (Eigen::Index j = 0; j < adjacency.cols(); ++j)
            if (adjacency(i, j) != 0.0)
                edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                 adjacency(i, j)});
    return from_edges(n, edges);
}

double WeightedGraph::total_weight() const {
    double s = 0.0;
    for (double d : degrees_) s += d;
    return s;
}

std::vector<WeightedGraph::Edge> WeightedGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i) {
        const auto c = neighbors(i);
        const auto v = neighbor_weights(i);
        for (std::size_t e = 0; e < c.size(); ++e)
            if (c[e] >= i) out.push_back({static_cast<std::uint32_t>(i), c[e], v[e]});
    }
    return out;
}

WeightedGraph WeightedGraph::induced(std::span<const std::size_t> nodes) const {
    std::unordered_map<std::size_t, std::uint32_t> local;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        if (nodes[r] >= size()) throw InvalidInput("induced subgraph node out of range");
        local.emplace(nodes[r], static_cast<std::uint32_t>(r));
    }
    std::vector<CsrMatrix::Triplet> triplets;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        const auto c = neighbors(nodes[r]);
        const auto v = neighbor_weights(nodes[r]);
        for (std::size_t e = 0; e < c.size(); ++e)
            if (auto it = local.find(c[e]); it != local.end())
                triplets.push_back({static_cast<std::uint32_t>(r), it->second, v[e]});
    }
    return WeightedGraph(CsrMatrix::symmetric_from_triplets(nodes.size(), triplets));
}

WeightedGraph WeightedGraph::with_isolated_self_loops(double w) const {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("self-loop weight must be positive");
    auto list = edges();
    for (std::size_t i = 0; i < size(); ++i)
        if (!(degrees_[i] > 0.0)) list.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), w});
    return from_edges(size(), list);
}

std::size_t WeightedGraph::isolated_count() const {
    return static_cast<std::size_t>(std::count_if(degrees_.begin(), degrees_.end(), [](double d) { return !(d > 0.0); }));
}

} // namespace plcut
