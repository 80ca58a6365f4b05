#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plcut/geometry.hpp"
#include "plcut/partition.hpp"
#include "plcut/solver.hpp"

namespace plcut {

/**
 * Normalized mutual information I(a;b) / sqrt(H(a) H(b)) with natural logs.
 * Two single-cluster partitions score 1. Exactly symmetric in its arguments.
 */
double nmi(const Partition& a, const Partition& b);

struct SizeHistogram {
    std::vector<std::size_t> sizes;                           ///< descending
    std::vector<std::pair<std::size_t, std::size_t>> rank_size; ///< (rank from 1, size)
};

SizeHistogram size_histogram(const Partition& p);

struct AuditReport {
    bool monotonicity_violation = false;
    /// Index into the interleaved trace (objective, assignment, objective, ...) of the first increase.
    std::size_t first_violation = 0;
    double max_increase = 0.0;
    double recomputed_final = 0.0;
    /// max of |recomputed - reported final| and the run's own incremental discrepancy.
    double discrepancy = 0.0;

    bool ok(double tol = 1e-7) const { return !monotonicity_violation && discrepancy < tol; }
};

/// Relative slack allowed before a step counts as an increase.
inline constexpr double kMonotoneSlack = 1e-9;

/// Trace-only check; recomputed_final is left at the reported final value.
AuditReport audit_trace(const RunResult& result);

/**
 * Checks the run's traces for increases and recomputes the final objective
 * from scratch on `geom`. Throws InvalidInput on an empty trace.
 */
AuditReport audit_objective(const RunResult& result, const Geometry& geom, const PYParams& params);

} // namespace plcut
