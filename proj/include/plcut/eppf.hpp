#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "plcut/partition.hpp"

namespace plcut {

/**
 * ln of the generalized rising factorial x (x + a) ... (x + (m-1) a).
 * Returns 0 for m == 0. Throws DomainError if any factor is nonpositive.
 */
double log_rising_factorial(double x, std::size_t m, double a);

/// ln p(Z | alpha, theta) of the Pitman-Yor partition distribution, from block sizes.
double log_eppf(std::span<const std::size_t> sizes, const PYParams& params);
double log_eppf(const Partition& p, const PYParams& params);

/// Passed as `target_size` to move_delta to mean "open a new cluster".
inline constexpr std::size_t kNewClusterSize = 0;

/**
 * Exact change of the regularizer r = -ln p when one point leaves a cluster of
 * `source_size` and joins a cluster of `target_size` (kNewClusterSize for a new
 * one) in a partition with k clusters. Lambda is not applied.
 *
 * Moving a singleton into a new cluster is forbidden and yields nullopt.
 */
std::optional<double> move_delta(const PYParams& params, std::size_t source_size,
                                 std::size_t target_size, std::size_t k);

/**
 * Running value of ln p(Z) for one solver run, updated in O(1) per move.
 * Re-evaluates from scratch every `kResyncInterval` moves to bound drift.
 */
class EppfState {
public:
    static constexpr std::size_t kResyncInterval = 10000;

    EppfState(const PYParams& params, const Partition& p);

    double log_eppf() const noexcept { return log_num_ - log_den_ + log_prod_; }
    /// The regularizer r = -ln p.
    double regularizer() const noexcept { return -log_eppf(); }

    /**
     * Records a move that has already been applied to `after`. Sizes are the
     * ones before the move; target_size == kNewClusterSize for a new cluster.
     */
    void apply_move(std::size_t source_size, std::size_t target_size, const Partition& after);

    void resync(const Partition& p);

private:
    PYParams params_;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::size_t moves_since_resync_ = 0;
    double log_num_ = 0.0;
    double log_den_ = 0.0;
    double log_prod_ = 0.0;
};

} // namespace plcut
