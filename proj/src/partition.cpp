#include "plcut/partition.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "plcut/errors.hpp"

namespace plcut {

namespace {

template <typename Label>
void compact(std::span<const Label> labels, std::vector<ClusterId>& assign,
                std::vector<std::size_t>& sizes) {
    if (labels.empty()) throw InvalidInput("partition needs at least one point");
    std::unordered_map<std::int64_t, ClusterId> ids;
    assign.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto label = static_cast<std::int64_t>(labels[i]);
        if (label < 0) throw InvalidInput("negative cluster label at index " + std::to_string(i));
        auto [it, inserted] = ids.try_emplace(label, static_cast<ClusterId>(ids.size()));
        if (inserted) sizes.push_back(0);
        assign[i] = it->second;
        ++sizes[it->second];
    }
}

} // namespace

Partition Partition::from_assignments(std::span<const std::int64_t> labels) {
    Partition p;
    compact(labels, p.assign_, p.sizes_);
    return p;
}

Partition Partition::from_assignments(std::span<const ClusterId> labels) {
    Partition p;
    compact(labels, p.assign_, p.sizes_);
    return p;
}

Partition Partition::single_cluster(std::size_t n) {
    if (n == 0) throw InvalidInput("partition needs at least one point");
    Partition p;
    p.assign_.assign(n, 0);
    p.sizes_.assign(1, n);
    return p;
}

Partition Partition::singletons(std::size_t n) {
    if (n == 0) throw InvalidInput("partition needs at least one point");
    Partition p;
    p.assign_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.assign_[i] = static_cast<ClusterId>(i);
    p.sizes_.assign(n, 1);
    return p;
}

ClusterId Partition::move(std::size_t i, ClusterId target) {
    const ClusterId source = assign_.at(i);
    if (target == source) return kNewCluster;
    if (target == kNewCluster) {
        assign_[i] = static_cast<ClusterId>(sizes_.size());
        sizes_.push_back(1);
    } else {
        if (target >= sizes_.size()) throw InvalidInput("move target out of range");
        assign_[i] = target;
        ++sizes_[target];
    }
    if (--sizes_[source] != 0) return kNewCluster;

    sizes_.erase(sizes_.begin() + source);
    for (auto& a : assign_)
        if (a > source) --a;
    return source;
}

bool Partition::valid() const {
    if (assign_.empty()) return false;
    std::vector<std::size_t> counted(sizes_.size(), 0);
    for (auto a : assign_) {
        if (a >= sizes_.size()) return false;
        ++counted[a];
    }
    for (std::size_t c = 0; c < sizes_.size(); ++c)
        if (sizes_[c] == 0 || counted[c] != sizes_[c]) return false;
    return true;
}

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(k());
    for (std::size_t c = 0; c < k(); ++c) out[c].reserve(sizes_[c]);
    for (std::size_t i = 0; i < n(); ++i) out[assign_[i]].push_back(i);
    return out;
}

Partition move_point(Partition p, std::size_t i, ClusterId target) {
    p.move(i, target);
    return p;
}

void PYParams::validate() const {
    if (!(theta >= 0.0 && theta < 1.0))
        throw InvalidInput("theta must lie in [0, 1), got " + std::to_string(theta));
    if (!(alpha + theta > 0.0))
        throw InvalidInput("alpha + theta must be positive, got alpha=" + std::to_string(alpha));
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidInput("lambda must be finite and nonnegative, got " + std::to_string(lambda));
}

VectorDataset::VectorDataset(RowMatrix pts)
    : points(std::move(pts)), weights(Eigen::VectorXd::Ones(points.rows())) {}

VectorDataset::VectorDataset(RowMatrix pts, Eigen::VectorXd w)
    : points(std::move(pts)), weights(std::move(w)) {}

void VectorDataset::validate() const {
    if (points.rows() == 0) throw InvalidInput("dataset has no points");
    if (points.cols() == 0) throw InvalidInput("dataset has zero dimensions");
    if (weights.size() != points.rows()) throw InvalidInput("weights/points length mismatch");
    if (!points.allFinite()) throw InvalidInput("dataset contains non-finite coordinates");
    for (Eigen::Index i = 0; i < weights.size(); ++i)
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw InvalidInput("weight " + std::to_string(i) + " is not a positive finite number");
}

void normalize_min_max(VectorDataset& data) {
    for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
        auto col = data.points.col(j);
        const double lo = col.minCoeff();
        const double range = col.maxCoeff() - lo;
        if (range > 0.0)
            col = (col.array() - lo) / range;
        else
            col.setZero();
    }
}

} // namespace plcut
