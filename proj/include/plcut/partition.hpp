#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace plcut {

using ClusterId = std::uint32_t;

/// Marks a move into a cluster that does not exist yet.
inline constexpr ClusterId kNewCluster = std::numeric_limits<ClusterId>::max();

/**
 * Hard assignment of n points to k nonempty clusters with dense ids 0..k-1.
 *
 * When a cluster empties it is dropped and every id above it shifts down by
 * one, so ids keep their relative order. Single writer; cheap to copy.
 */
class Partition {
public:
    Partition() = default;

    /// Compacts arbitrary nonnegative labels to dense ids in first-appearance order.
    static Partition from_assignments(std::span<const std::int64_t> labels);
    static Partition from_assignments(std::span<const ClusterId> labels);

    /// All n points in cluster 0.
    static Partition single_cluster(std::size_t n);

    /// Every point in its own cluster, ids following point order.
    static Partition singletons(std::size_t n);

    std::size_t n() const noexcept { return assign_.size(); }
    std::size_t k() const noexcept { return sizes_.size(); }

    ClusterId operator[](std::size_t i) const { return assign_[i]; }
    std::span<const ClusterId> assignments() const noexcept { return assign_; }
    std::span<const std::size_t> sizes() const noexcept { return sizes_; }
    std::size_t size_of(ClusterId c) const { return sizes_[c]; }

    /**
     * Reassigns point i to `target` (an existing id or kNewCluster, which
     * appends cluster k). Moving a point to its own cluster is a no-op.
     *
     * Returns the id of the cluster that was removed because it emptied, or
     * kNewCluster if none was. Note that the returned id refers to the
     * numbering before the shift.
     */
    ClusterId move(std::size_t i, ClusterId target);

    /// Checks every structural invariant. O(n + k).
    bool valid() const;

    /// Points of each cluster, in point order.
    std::vector<std::vector<std::size_t>> members() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<ClusterId> assign_;
    std::vector<std::size_t> sizes_;
};

/// Functional form of Partition::move.
Partition move_point(Partition p, std::size_t i, ClusterId target);

/// Pitman-Yor regularization parameters.
struct PYParams {
    double alpha = 1.0;  ///< concentration, alpha + theta > 0
    double theta = 0.0;  ///< discount in [0, 1)
    double lambda = 1.0; ///< weight of the regularizer, >= 0

    /// Throws InvalidInput when the parameters are outside their domain.
    void validate() const;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n points in d dimensions with positive per-point weights.
struct VectorDataset {
    RowMatrix points;
    Eigen::VectorXd weights;

    VectorDataset() = default;
    /// Unit weights.
    explicit VectorDataset(RowMatrix pts);
    VectorDataset(RowMatrix pts, Eigen::VectorXd w);

    std::size_t n() const noexcept { return static_cast<std::size_t>(points.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(points.cols()); }

    void validate() const;
};

/// Rescales each feature to [0, 1]; a constant feature maps to 0.
void normalize_min_max(VectorDataset& data);

} // namespace plcut
