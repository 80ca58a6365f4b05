#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "plcut/graph.hpp"
#include "plcut/partition.hpp"

namespace plcut {

/**
 * The solver's only view of the data: weighted squared distances from points
 * to a set of cluster centers.
 *
 * Centers are frozen between calls to recenter(). During a sweep the solver
 * reports structural changes with open_cluster() (a point founds a new
 * cluster, appended last, centered on that point) and close_cluster() (a
 * cluster emptied, later ids shift down), mirroring Partition::move.
 *
 * Implementations are single-writer; use clone() to give each run its own.
 */
class Geometry {
public:
    virtual ~Geometry() = default;

    virtual std::size_t size() const = 0;
    virtual double weight(std::size_t i) const = 0;

    /// Moves every center to the weighted mean of its cluster in p.
    virtual void recenter(const Partition& p) = 0;
    virtual std::size_t center_count() const = 0;

    /// w_i * ||x_i - mu_c||^2 against the current center c.
    virtual double point_to_mean_sq(std::size_t i, ClusterId c) const = 0;
    /// Same for every center at once; out.size() must equal center_count().
    virtual void point_to_means_sq(std::size_t i, std::span<double> out) const;

    virtual void open_cluster(std::size_t founder) = 0;
    virtual void close_cluster(ClusterId c) = 0;

    /**
     * Weighted k-means cost of p with each center at its weighted mean,
     * evaluated directly from the data and independent of the current centers.
     */
    virtual double kmeans_cost(const Partition& p) const = 0;

    virtual std::unique_ptr<Geometry> clone() const = 0;
};

/// Sum of point_to_mean_sq(i, p[i]) against the current centers.
double fit_term(const Geometry& geom, const Partition& p);

/// Explicit coordinates; squared Euclidean distances.
class VectorGeometry final : public Geometry {
public:
    /// `data` must outlive the geometry and its clones.
    explicit VectorGeometry(const VectorDataset& data);

    std::size_t size() const override { return data_->n(); }
    double weight(std::size_t i) const override { return data_->weights[static_cast<Eigen::Index>(i)]; }
    void recenter(const Partition& p) override;
    std::size_t center_count() const override { return centers_.size(); }
    double point_to_mean_sq(std::size_t i, ClusterId c) const override;
    void point_to_means_sq(std::size_t i, std::span<double> out) const override;
    void open_cluster(std::size_t founder) override;
    void close_cluster(ClusterId c) override;
    double kmeans_cost(const Partition& p) const override;
    std::unique_ptr<Geometry> clone() const override;

    const std::vector<Eigen::VectorXd>& centers() const noexcept { return centers_; }
    /// Weighted means of p's clusters.
    static std::vector<Eigen::VectorXd> weighted_means(const VectorDataset& data, const Partition& p);

private:
    const VectorDataset* data_;
    std::vector<Eigen::VectorXd> centers_;
};

/// Kernel matrix with per-point weights; the weighted kernel k-means view of a graph.
struct KernelProblem {
    CsrMatrix kernel;
    std::vector<double> weights;
    double rho = 0.0; ///< diagonal shift that was applied (informational)

    std::size_t size() const noexcept { return weights.size(); }

    /// Wraps a dense symmetric kernel. Throws InvalidInput on shape or weight errors.
    static KernelProblem from_dense(const Eigen::MatrixXd& kernel, std::vector<double> weights);

    void validate() const;
};

/**
 * w_i * ||phi(x_i) - mu_c||^2 for the weighted mean mu_c of cluster c of p,
 * expanded through the kernel. Evaluated from scratch in O(nnz).
 */
double kernel_point_to_mean_sq(const KernelProblem& kp, const Partition& p, std::size_t i, ClusterId c);

/// Weighted kernel k-means cost sum_i w_i K_ii - sum_c (sum_{j,l in c} w_j w_l K_jl) / s_c.
double kernel_kmeans_cost(const KernelProblem& kp, const Partition& p);

/**
 * Kernel-space centers. A center is either the weighted mean of a cluster as
 * it stood at the last recenter() (cross terms accumulated from one pass over
 * a kernel row, self term cached), or a single founding point.
 * One row pass per distance query: O(nnz(row) + k).
 */
class KernelGeometry final : public Geometry {
public:
    /// `kp` must outlive the geometry and its clones.
    explicit KernelGeometry(const KernelProblem& kp);

    std::size_t size() const override { return kp_->size(); }
    double weight(std::size_t i) const override { return kp_->weights[i]; }
    void recenter(const Partition& p) override;
    std::size_t center_count() const override { return centers_.size(); }
    double point_to_mean_sq(std::size_t i, ClusterId c) const override;
    void point_to_means_sq(std::size_t i, std::span<double> out) const override;
    void open_cluster(std::size_t founder) override;
    void close_cluster(ClusterId c) override;
    double kmeans_cost(const Partition& p) const override;
    std::unique_ptr<Geometry> clone() const override;

private:
    struct Center {
        bool founder;      // true: single point `ref`; false: snapshot cluster `ref`
        std::uint32_t ref;
        double self;       // squared norm of the center in feature space
    };

    const KernelProblem* kp_;
    std::vector<double> diag_;
    std::vector<ClusterId> snapshot_;     // labels at the last recenter
    std::vector<double> snapshot_mass_;   // s_c at the last recenter
    std::vector<Center> centers_;
    mutable std::vector<double> acc_;     // per snapshot cluster: sum_j w_j K_ij
    mutable std::vector<double> row_;     // dense copy of the current kernel row
};

} // namespace plcut
