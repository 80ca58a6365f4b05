#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "plcut/geometry.hpp"
#include "plcut/partition.hpp"
#include "plcut/solver.hpp"

namespace plcut {

/// Either a seed for a random start or an explicit starting partition.
using KMeansInit = std::variant<std::uint64_t, Partition>;

/**
 * Random partition with exactly k nonempty clusters: a seeded shuffle puts
 * one point in each cluster, the rest are assigned uniformly.
 */
Partition random_partition(std::size_t n, std::size_t k, std::uint64_t seed);

/**
 * Fixed-k weighted kernel k-means: the power-law solver with lambda = 0 and
 * no new clusters. Emptied clusters are reseeded with the farthest point
 * (counted in RunResult::reseeds). Throws InvalidInput when k > n or when
 * an explicit init does not have exactly k clusters.
 */
RunResult weighted_kernel_kmeans(const KernelProblem& kp, std::size_t k, const KMeansInit& init,
                                 std::size_t max_sweeps = 100);

/// Weighted Lloyd k-means. A seed init uses k-means++ seeding.
RunResult kmeans(const VectorDataset& data, std::size_t k, const KMeansInit& init, std::size_t max_iters = 100);

struct PypMeansConfig {
    double lambda = 1.0;
    double theta = 0.0;
    std::uint64_t seed = 0;
    std::size_t max_iters = 100;
    bool squared = false; ///< use ||x - mu||^2 instead of ||x - mu|| in the fit term
};

/// sum_c sum_{i in c} ||x_i - mu_c|| + (lambda - theta ln k) k, with mu_c the weighted mean.
double pyp_objective(const VectorDataset& data, const Partition& p, double lambda, double theta, bool squared = false);

/**
 * dp-means style iterations on pyp_objective: a point founds a new cluster
 * when its nearest distance exceeds the change of the cluster penalty from k
 * to k + 1. The seed shuffles the visit order. objective_trace holds
 * pyp_objective per iteration (not guaranteed monotone).
 */
RunResult pyp_means(const VectorDataset& data, const PypMeansConfig& config);

} // namespace plcut
