#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plcut/eppf.hpp"
#include "plcut/geometry.hpp"
#include "plcut/partition.hpp"

namespace plcut {

enum class VisitOrder { kFixed, kShuffled };

struct SolverConfig {
    PYParams params;
    std::size_t max_sweeps = 100;
    VisitOrder order = VisitOrder::kFixed;
    /// Independent runs; they differ only in the shuffle seed, so FIXED order runs once.
    std::size_t restarts = 1;
    std::uint64_t seed = 0;
    /**
     * Nonzero pins the number of clusters: no new clusters are opened, and a
     * cluster that empties during a sweep is reseeded with the point farthest
     * from its center. Used by the fixed-k baselines.
     */
    std::size_t fixed_k = 0;

    void validate() const;
};

/**
 * Outcome of one solver run.
 *
 * objective_trace[0] is the objective of the starting partition; entry t >= 1
 * is the objective after sweep t's mean update. assignment_trace[t-1] is the
 * objective right after sweep t's assignment phase, against the centers that
 * phase used. Both are full objectives: fit + lambda * (-ln EPPF).
 */
struct RunResult {
    Partition partition;
    std::vector<double> objective_trace;
    std::vector<double> assignment_trace;
    std::vector<std::size_t> k_trace;
    std::vector<std::size_t> moves_trace;
    /// Filled only when the caller supplies a sweep probe (e.g. the graph cut value).
    std::vector<double> probe_trace;
    std::size_t sweeps_used = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    std::size_t restart = 0;
    std::size_t reseeds = 0;
    /// Largest gap between incrementally tracked and recomputed objective values.
    double max_discrepancy = 0.0;

    double final_objective() const { return objective_trace.back(); }
};

/// Evaluated on the partition after each sweep; must be safe to call concurrently.
using SweepProbe = std::function<double(const Partition&)>;

/// Full objective with every center at its weighted mean, from scratch.
double regularized_objective(const Geometry& geom, const Partition& p, const PYParams& params);

/**
 * Regularized distance of point i (currently in p[i]) to `candidate`, which is
 * an existing cluster id or kNewCluster, against the geometry's current
 * centers. Differences between candidates equal differences of the objective
 * with centers held fixed. nullopt marks a forbidden move (a singleton
 * opening a new cluster). The singleton's own cluster scores exactly 0.
 */
std::optional<double> regularized_distance(const Geometry& geom, const Partition& p,
                                           const PYParams& params, std::size_t i,
                                           ClusterId candidate);

struct SweepStats {
    std::size_t moved = 0;
    /// Sum of exact objective changes (centers held fixed) of the moves made.
    double objective_change = 0.0;
};

/**
 * One assignment pass: visits the points in `order`, moving each to its
 * smallest regularized distance. The current cluster wins ties, then the
 * lowest id; a new cluster loses every tie. Emptied clusters disappear at
 * once and new clusters are centered on their founder at once; no other
 * center moves.
 */
SweepStats sweep(Geometry& geom, Partition& p, const PYParams& params,
                 std::span<const std::size_t> order, bool allow_new = true,
                 EppfState* eppf = nullptr);

/// Runs from the single-cluster start, keeping the best restart by final objective.
RunResult run(const Geometry& geom, const SolverConfig& config, const SweepProbe& probe = {});

/// Same, starting from `init` instead of one cluster.
RunResult run_from(const Geometry& geom, const SolverConfig& config, const Partition& init,
                   const SweepProbe& probe = {});

} // namespace plcut
