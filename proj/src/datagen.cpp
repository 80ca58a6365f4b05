#include "plcut/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "plcut/errors.hpp"

namespace plcut {

Partition sample_pycrp(std::size_t n, double alpha, double theta, std::uint64_t seed) {
    if (n == 0) throw InvalidInput("sample_pycrp needs n >= 1");
    PYParams{alpha, theta, 0.0}.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<ClusterId> labels(n);
    std::vector<std::size_t> sizes{1};
    labels[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        // total mass: sum_c (n_c - theta) + k theta + alpha = i + alpha
        double u = unit(rng) * (static_cast<double>(i) + alpha);
        ClusterId pick = static_cast<ClusterId>(sizes.size());
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            u -= static_cast<double>(sizes[c]) - theta;
            if (u < 0.0) {
                pick = static_cast<ClusterId>(c);
                break;
            }
        }
        if (pick == sizes.size()) sizes.push_back(0);
        ++sizes[pick];
        labels[i] = pick;
    }
    return Partition::from_assignments(std::span<const ClusterId>(labels));
}

void SbmSpec::validate() const {
    if (n == 0) throw InvalidInput("SBM needs n >= 1");
    PYParams{alpha, theta, 0.0}.validate();
    if (diag_var < 0.0 || off_var < 0.0) throw InvalidInput("SBM variances must be nonnegative");
}

WeightedGraph sample_sbm(const SbmSpec& spec, const Partition& labels) {
    spec.validate();
    if (labels.n() != spec.n) throw InvalidInput("labels do not match SBM size");
    std::mt19937_64 rng(spec.seed);
    const std::size_t k = labels.k();

    std::normal_distribution<double> diag(spec.diag_mean, std::sqrt(spec.diag_var));
    std::normal_distribution<double> off(spec.off_mean, std::sqrt(spec.off_var));
    std::vector<double> block(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            const double v = std::clamp(a == b ? diag(rng) : off(rng), 0.0, 1.0);
            block[a * k + b] = block[b * k + a] = v;
        }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<WeightedGraph::Edge> edges;
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = i + 1; j < spec.n; ++j)
            if (unit(rng) < block[labels[i] * k + labels[j]])
                edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 1.0});
    return WeightedGraph::from_edges(spec.n, edges);
}

std::pair<WeightedGraph, Partition> sample_pycrp_sbm(const SbmSpec& spec) {
    spec.validate();
    Partition labels = sample_pycrp(spec.n, spec.alpha, spec.theta, spec.seed);
    SbmSpec graph_spec = spec;
    graph_spec.seed = spec.seed ^ 0x9e3779b97f4a7c15ULL;
    return {sample_sbm(graph_spec, labels), std::move(labels)};
}

namespace {

Eigen::MatrixXd pairwise_sq(const VectorDataset& data) {
    const Eigen::VectorXd norms = data.points.rowwise().squaredNorm();
    Eigen::MatrixXd g = -2.0 * (data.points * data.points.transpose());
    g.colwise() += norms;
    g.rowwise() += norms.transpose();
    return g.cwiseMax(0.0);
}

} // namespace

WeightedGraph gaussian_similarity_graph(const VectorDataset& data, double sigma, Sparsify sparsify) {
    data.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be positive");
    const std::size_t n = data.n();
    const Eigen::MatrixXd sq = pairwise_sq(data);
    const double scale = 1.0 / (2.0 * sigma * sigma);

    std::vector<WeightedGraph::Edge> trips;
    auto keep = [&](std::size_t i, std::size_t j) {
        const double a = std::exp(-sq(i, j) * scale);
        if (a > 0.0) trips.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), a});
    };

    switch (sparsify.kind) {
    case Sparsify::Kind::kNone:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) keep(i, j);
        break;
    case Sparsify::Kind::kEps:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::sqrt(sq(i, j)) <= sparsify.eps) keep(i, j);
        break;
    case Sparsify::Kind::kKnn: {
        if (sparsify.k == 0) throw InvalidInput("knn sparsification needs k >= 1");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            idx.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) idx.push_back(j);
            const std::size_t m = std::min(sparsify.k, idx.size());
            std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                              [&](std::size_t a, std::size_t b) {
                                  return sq(i, a) < sq(i, b) || (sq(i, a) == sq(i, b) && a < b);
                              });
            for (std::size_t t = 0; t < m; ++t) keep(i, idx[t]);
        }
        break;
    }
    }
    return WeightedGraph::from_edges(n, trips);
}

double median_pairwise_distance(const VectorDataset& data) {
    data.validate();
    if (data.n() < 2) throw InvalidInput("median pairwise distance needs at least two points");
    const Eigen::MatrixXd sq = pairwise_sq(data);
    std::vector<double> d;
    d.reserve(data.n() * (data.n() - 1) / 2);
    for (std::size_t i = 0; i < data.n(); ++i)
        for (std::size_t j = i + 1; j < data.n(); ++j) d.push_back(std::sqrt(sq(i, j)));
    const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
    std::nth_element(d.begin(), mid, d.end());
    if (d.size() % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(d.begin(), mid);
    return 0.5 * (lo + hi);
}

std::pair<VectorDataset, Partition> sample_power_law_blobs(std::size_t n, std::size_t d, const PYParams& pycrp,
                                                           double blob_std, double box, std::uint64_t seed) {
    if (d == 0) throw InvalidInput("blobs need d >= 1");
    if (!(blob_std >= 0.0) || !std::isfinite(blob_std)) throw InvalidInput("blob_std must be >= 0");
    if (!(box > 0.0)) throw InvalidInput("box must be positive");
    Partition labels = sample_pycrp(n, pycrp.alpha, pycrp.theta, seed);
    std::mt19937_64 rng(seed ^ 0xbf58476d1ce4e5b9ULL);
    std::uniform_real_distribution<double> where(0.0, box);
    std::normal_distribution<double> noise(0.0, blob_std > 0.0 ? blob_std : 1.0);

    RowMatrix centers(static_cast<Eigen::Index>(labels.k()), static_cast<Eigen::Index>(d));
    for (Eigen::Index c = 0; c < centers.rows(); ++c)
        for (Eigen::Index j = 0; j < centers.cols(); ++j) centers(c, j) = where(rng);
    RowMatrix pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < pts.cols(); ++j)
            pts(static_cast<Eigen::Index>(i), j) = centers(labels[i], j) + (blob_std > 0.0 ? noise(rng) : 0.0);
    return {VectorDataset(std::move(pts)), std::move(labels)};
}

} // namespace plcut
