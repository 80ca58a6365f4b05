#include "plcut/geometry.hpp"

#include <cmath>
#include <string>

#include "plcut/errors.hpp"

namespace plcut {

void Geometry::point_to_means_sq(std::size_t i, std::span<double> out) const {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = point_to_mean_sq(i, static_cast<ClusterId>(c));
}

double fit_term(const Geometry& geom, const Partition& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) s += geom.point_to_mean_sq(i, p[i]);
    return s;
}

// ---------------------------------------------------------------- vectors

VectorGeometry::VectorGeometry(const VectorDataset& data) : data_(&data) {
    data.validate();
}

std::vector<Eigen::VectorXd> VectorGeometry::weighted_means(const VectorDataset& data, const Partition& p) {
    std::vector<Eigen::VectorXd> sums(p.k(), Eigen::VectorXd::Zero(data.points.cols()));
    std::vector<double> mass(p.k(), 0.0);
    for (std::size_t i = 0; i < p.n(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        sums[p[i]] += data.weights[row] * data.points.row(row).transpose();
        mass[p[i]] += data.weights[row];
    }
    for (std::size_t c = 0; c < sums.size(); ++c) sums[c] /= mass[c];
    return sums;
}

void VectorGeometry::recenter(const Partition& p) {
    if (p.n() != size()) throw InvalidInput("partition size does not match dataset");
    centers_ = weighted_means(*data_, p);
}

double VectorGeometry::point_to_mean_sq(std::size_t i, ClusterId c) const {
    const auto row = static_cast<Eigen::Index>(i);
    return data_->weights[row] * (data_->points.row(row).transpose() - centers_[c]).squaredNorm();
}

void VectorGeometry::point_to_means_sq(std::size_t i, std::span<double> out) const {
    const auto row = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd x = data_->points.row(row).transpose();
    const double w = data_->weights[row];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = w * (x - centers_[c]).squaredNorm();
}

void VectorGeometry::open_cluster(std::size_t founder) {
    centers_.push_back(data_->points.row(static_cast<Eigen::Index>(founder)).transpose());
}

void VectorGeometry::close_cluster(ClusterId c) {
    centers_.erase(centers_.begin() + c);
}

double VectorGeometry::kmeans_cost(const Partition& p) const {
    const auto means = weighted_means(*data_, p);
    double s = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        s += data_->weights[row] * (data_->points.row(row).transpose() - means[p[i]]).squaredNorm();
    }
    return s;
}

std::unique_ptr<Geometry> VectorGeometry::clone() const {
    return std::make_unique<VectorGeometry>(*this);
}

// ---------------------------------------------------------------- kernels

KernelProblem KernelProblem::from_dense(const Eigen::MatrixXd& kernel, std::vector<double> weights) {
    KernelProblem kp;
    kp.kernel = CsrMatrix::from_dense(kernel);
    kp.weights = std::move(weights);
    kp.validate();
    return kp;
}

void KernelProblem::validate() const {
    if (kernel.size() != weights.size()) throw InvalidInput("kernel/weights size mismatch");
    if (weights.empty()) throw InvalidInput("empty kernel problem");
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw InvalidInput("kernel weight " + std::to_string(i) + " must be positive");
    if (!kernel.is_symmetric(1e-9)) throw InvalidInput("kernel matrix is not symmetric");
}

double kernel_point_to_mean_sq(const KernelProblem& kp, const Partition& p, std::size_t i, ClusterId c) {
    if (c >= p.k()) throw InvalidInput("cluster id out of range");
    double mass = 0.0;
    double self = 0.0;
    for (std::size_t j = 0; j < p.n(); ++j) {
        if (p[j] != c) continue;
        mass += kp.weights[j];
        const auto cols = kp.kernel.cols(j);
        const auto vals = kp.kernel.values(j);
        for (std::size_t e = 0; e < cols.size(); ++e)
            if (p[cols[e]] == c) self += kp.weights[j] * kp.weights[cols[e]] * vals[e];
    }
    double cross = 0.0;
    const auto cols = kp.kernel.cols(i);
    const auto vals = kp.kernel.values(i);
    for (std::size_t e = 0; e < cols.size(); ++e)
        if (p[cols[e]] == c) cross += kp.weights[cols[e]] * vals[e];
    return kp.weights[i] * (kp.kernel.at(i, i) - 2.0 * cross / mass + self / (mass * mass));
}

double kernel_kmeans_cost(const KernelProblem& kp, const Partition& p) {
    std::vector<double> mass(p.k(), 0.0);
    std::vector<double> assoc(p.k(), 0.0);
    double diag = 0.0;
    for (std::size_t j = 0; j < p.n(); ++j) {
        const ClusterId c = p[j];
        mass[c] += kp.weights[j];
        const auto cols = kp.kernel.cols(j);
        const auto vals = kp.kernel.values(j);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            if (cols[e] == j) diag += kp.weights[j] * vals[e];
            if (p[cols[e]] == c) assoc[c] += kp.weights[j] * kp.weights[cols[e]] * vals[e];
        }
    }
    double s = diag;
    for (std::size_t c = 0; c < p.k(); ++c) s -= assoc[c] / mass[c];
    return s;
}

KernelGeometry::KernelGeometry(const KernelProblem& kp) : kp_(&kp) {
    kp.validate();
    diag_.resize(kp.size());
    for (std::size_t i = 0; i < kp.size(); ++i) diag_[i] = kp.kernel.at(i, i);
    row_.assign(kp.size(), 0.0);
}

void KernelGeometry::recenter(const Partition& p) {
    if (p.n() != size()) throw InvalidInput("partition size does not match kernel");
    snapshot_.assign(p.assignments().begin(), p.assignments().end());
    snapshot_mass_.assign(p.k(), 0.0);
    std::vector<double> assoc(p.k(), 0.0);
    const auto& w = kp_->weights;
    for (std::size_t j = 0; j < p.n(); ++j) {
        const ClusterId c = snapshot_[j];
        snapshot_mass_[c] += w[j];
        const auto cols = kp_->kernel.cols(j);
        const auto vals = kp_->kernel.values(j);
        for (std::size_t e = 0; e < cols.size(); ++e)
            if (snapshot_[cols[e]] == c) assoc[c] += w[j] * w[cols[e]] * vals[e];
    }
    centers_.clear();
    centers_.reserve(p.k());
    for (std::size_t c = 0; c < p.k(); ++c)
        centers_.push_back({false, static_cast<std::uint32_t>(c),
                            assoc[c] / (snapshot_mass_[c] * snapshot_mass_[c])});
    acc_.assign(p.k(), 0.0);
}

void KernelGeometry::point_to_means_sq(std::size_t i, std::span<double> out) const {
    const auto& w = kp_->weights;
    const auto cols = kp_->kernel.cols(i);
    const auto vals = kp_->kernel.values(i);
    std::fill(acc_.begin(), acc_.end(), 0.0);
    for (std::size_t e = 0; e < cols.size(); ++e) {
        acc_[snapshot_[cols[e]]] += w[cols[e]] * vals[e];
        row_[cols[e]] = vals[e];
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        const Center& ctr = centers_[c];
        const double cross = ctr.founder ? row_[ctr.ref] : acc_[ctr.ref] / snapshot_mass_[ctr.ref];
        out[c] = w[i] * (diag_[i] - 2.0 * cross + ctr.self);
    }
    for (auto j : cols) row_[j] = 0.0;
}

double KernelGeometry::point_to_mean_sq(std::size_t i, ClusterId c) const {
    const Center& ctr = centers_[c];
    const auto& w = kp_->weights;
    double cross = 0.0;
    if (ctr.founder) {
        cross = kp_->kernel.at(i, ctr.ref);
    } else {
        const auto cols = kp_->kernel.cols(i);
        const auto vals = kp_->kernel.values(i);
        for (std::size_t e = 0; e < cols.size(); ++e)
            if (snapshot_[cols[e]] == ctr.ref) cross += w[cols[e]] * vals[e];
        cross /= snapshot_mass_[ctr.ref];
    }
    return w[i] * (diag_[i] - 2.0 * cross + ctr.self);
}

void KernelGeometry::open_cluster(std::size_t founder) {
    centers_.push_back({true, static_cast<std::uint32_t>(founder), diag_[founder]});
}

void KernelGeometry::close_cluster(ClusterId c) {
    centers_.erase(centers_.begin() + c);
}

double KernelGeometry::kmeans_cost(const Partition& p) const {
    return kernel_kmeans_cost(*kp_, p);
}

std::unique_ptr<Geometry> KernelGeometry::clone() const {
    return std::make_unique<KernelGeometry>(*this);
}

} // namespace plcut
