#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "plcut/geometry.hpp"
#include "plcut/graph.hpp"
#include "plcut/partition.hpp"
#include "plcut/solver.hpp"

namespace plcut {

enum class CutKind {
    kNormalizedCut,    // sum_c cut(V_c, rest) / deg(V_c)
    kRatioCut,         // sum_c cut(V_c, rest) / |V_c|
    kRatioAssociation, // sum_c cut(V_c, V_c) / |V_c|, to be maximized
};

std::string_view to_string(CutKind kind);
/// Accepts "ncut", "rcut", "rassoc". Throws InvalidInput otherwise.
CutKind parse_cut_kind(std::string_view name);

/// Sum of A_ij over i in s, j in t.
double cut(const WeightedGraph& g, std::span<const std::size_t> s, std::span<const std::size_t> t);
/// cut(s, V).
double degree(const WeightedGraph& g, std::span<const std::size_t> s);

/**
 * Graph cut objective of a partition. Throws DegenerateCluster for a
 * normalized cut with a zero-degree cluster.
 */
double cut_objective(const WeightedGraph& g, const Partition& p, CutKind kind);

enum class ShiftEstimate {
    kAuto,  ///< exact for n <= kExactShiftLimit, otherwise the bound
    kExact, ///< dense symmetric eigensolve
    kBound, ///< cheap upper bound: 1 for ncut, Gershgorin otherwise
};

inline constexpr std::size_t kExactShiftLimit = 2000;

/**
 * Smallest rho >= 0 that makes the weighted kernel W^1/2 K W^1/2 positive
 * semi-definite for the given cut kind.
 */
double psd_shift(const WeightedGraph& g, CutKind kind, ShiftEstimate mode = ShiftEstimate::kAuto);

/**
 * Kernel and weights under which weighted kernel k-means matches the cut:
 *   ncut:   K = rho D^-1 + D^-1 A D^-1, w = degrees
 *   rassoc: K = rho I + A,              w = 1
 *   rcut:   K = rho I - (D - A),        w = 1
 * rho == nullopt picks psd_shift(g, kind). Zero-degree nodes are rejected for ncut.
 */
KernelProblem build_kernel(const WeightedGraph& g, CutKind kind, std::optional<double> rho = std::nullopt);

struct GraphRunResult {
    RunResult run;     ///< probe_trace holds the plain cut objective per sweep
    double rho = 0.0;
    CutKind kind = CutKind::kNormalizedCut;
};

/// Builds the kernel for `kind` and runs the power-law solver on it.
GraphRunResult power_law_cut(const WeightedGraph& g, CutKind kind, const SolverConfig& config,
                             std::optional<double> rho = std::nullopt);

} // namespace plcut
