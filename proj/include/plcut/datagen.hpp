#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "plcut/graph.hpp"
#include "plcut/partition.hpp"

namespace plcut {

/// Sequential Pitman-Yor Chinese restaurant seating. Only alpha and theta are used.
Partition sample_pycrp(std::size_t n, double alpha, double theta, std::uint64_t seed);

struct SbmSpec {
    std::size_t n = 0;
    double alpha = 1.0;
    double theta = 0.0;
    double diag_mean = 0.3;
    double diag_var = 0.001;
    double off_mean = 0.01;
    double off_var = 0.001;
    std::uint64_t seed = 0;

    void validate() const;
};

/**
 * Stochastic block model on fixed labels. Block probabilities are drawn from
 * the two normals (variance, not standard deviation), clamped to [0, 1].
 * Edges are unweighted and there are no self-loops.
 */
WeightedGraph sample_sbm(const SbmSpec& spec, const Partition& labels);

/// Draws labels with sample_pycrp(spec.n, spec.alpha, spec.theta, spec.seed), then the graph.
std::pair<WeightedGraph, Partition> sample_pycrp_sbm(const SbmSpec& spec);

struct Sparsify {
    enum class Kind { kNone, kKnn, kEps } kind = Kind::kNone;
    std::size_t k = 0;   ///< neighbors kept per point for kKnn
    double eps = 0.0;    ///< Euclidean distance threshold for kEps

    static Sparsify none() { return {}; }
    static Sparsify knn(std::size_t k) { return {Kind::kKnn, k, 0.0}; }
    static Sparsify eps_ball(double t) { return {Kind::kEps, 0, t}; }
};

/**
 * A_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)) for i != j, zero diagonal.
 * kKnn keeps each point's k nearest neighbors and then symmetrizes by max;
 * kEps keeps pairs at distance <= eps.
 */
WeightedGraph gaussian_similarity_graph(const VectorDataset& data, double sigma,
                                        Sparsify sparsify = Sparsify::none());

/// Median Euclidean distance over distinct pairs; the AUTO choice for sigma.
double median_pairwise_distance(const VectorDataset& data);

/// Gaussian blobs whose sizes follow a PYCRP draw; centers uniform in [0, box]^d.
std::pair<VectorDataset, Partition> sample_power_law_blobs(std::size_t n, std::size_t d, const PYParams& pycrp,
                                                           double blob_std, double box, std::uint64_t seed);

} // namespace plcut
