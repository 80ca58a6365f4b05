#include "plcut/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "plcut/errors.hpp"

namespace plcut {

Partition random_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw InvalidInput("k must be at least 1");
    if (k > n) throw InvalidInput("k exceeds the number of points");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::int64_t> labels(n);
    std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(k) - 1);
    for (std::size_t r = 0; r < n; ++r) labels[order[r]] = r < k ? static_cast<std::int64_t>(r) : pick(rng);
    return Partition::from_assignments(std::span<const std::int64_t>(labels));
}

namespace {

SolverConfig fixed_k_config(std::size_t k, std::size_t max_sweeps) {
    SolverConfig cfg;
    cfg.params.lambda = 0.0;
    cfg.max_sweeps = max_sweeps;
    cfg.fixed_k = k;
    return cfg;
}

Partition resolve_init(const KMeansInit& init, std::size_t n, std::size_t k) {
    if (k == 0) throw InvalidInput("k must be at least 1");
    if (k > n) throw InvalidInput("k exceeds the number of points");
    if (const auto* seed = std::get_if<std::uint64_t>(&init)) return random_partition(n, k, *seed);
    const Partition& p = std::get<Partition>(init);
    if (p.n() != n) throw InvalidInput("initial partition size does not match the data");
    if (p.k() != k) throw InvalidInput("initial partition must have exactly k clusters");
    return p;
}

Partition kmeanspp(const VectorDataset& data, std::size_t k, std::uint64_t seed) {
    const std::size_t n = data.n();
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> seeds;
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<ClusterId> label(n, 0);
    auto add = [&](std::size_t s) {
        const ClusterId c = static_cast<ClusterId>(seeds.size());
        seeds.push_back(s);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<Eigen::Index>(i);
            const auto b = static_cast<Eigen::Index>(s);
            const double d = data.weights[a] * (data.points.row(a) - data.points.row(b)).squaredNorm();
            if (d < best[i]) {
                best[i] = d;
                label[i] = c;
            }
        }
    };
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    add(first(rng));
    while (seeds.size() < k) {
        const double total = std::accumulate(best.begin(), best.end(), 0.0);
        if (!(total > 0.0)) break; // all remaining points coincide with a seed
        std::discrete_distribution<std::size_t> next(best.begin(), best.end());
        add(next(rng));
    }
    // Coincident points can leave fewer than k clusters; the solver reseeds them.
    return Partition::from_assignments(std::span<const ClusterId>(label));
}

} // namespace

RunResult weighted_kernel_kmeans(const KernelProblem& kp, std::size_t k, const KMeansInit& init,
                                 std::size_t max_sweeps) {
    Partition start = resolve_init(init, kp.size(), k);
    KernelGeometry geom(kp);
    return run_from(geom, fixed_k_config(k, max_sweeps), start);
}

RunResult kmeans(const VectorDataset& data, std::size_t k, const KMeansInit& init, std::size_t max_iters) {
    data.validate();
    Partition start = std::holds_alternative<std::uint64_t>(init)
                          ? (k == 0 || k > data.n() ? resolve_init(init, data.n(), k)
                                                    : kmeanspp(data, k, std::get<std::uint64_t>(init)))
                          : resolve_init(init, data.n(), k);
    VectorGeometry geom(data);
    return run_from(geom, fixed_k_config(k, max_iters), start);
}

namespace {

double pyp_penalty(std::size_t k, double lambda, double theta) {
    const double kk = static_cast<double>(k);
    return (lambda - theta * std::log(kk)) * kk;
}

double pyp_dist(const VectorDataset& data, std::size_t i, const Eigen::VectorXd& mu, bool squared) {
    const double sq = (data.points.row(static_cast<Eigen::Index>(i)).transpose() - mu).squaredNorm();
    return data.weights[static_cast<Eigen::Index>(i)] * (squared ? sq : std::sqrt(sq));
}

} // namespace

double pyp_objective(const VectorDataset& data, const Partition& p, double lambda, double theta, bool squared) {
    if (p.n() != data.n()) throw InvalidInput("partition size does not match the data");
    const auto means = VectorGeometry::weighted_means(data, p);
    double fit = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) fit += pyp_dist(data, i, means[p[i]], squared);
    return fit + pyp_penalty(p.k(), lambda, theta);
}

RunResult pyp_means(const VectorDataset& data, const PypMeansConfig& config) {
    data.validate();
    if (!(config.lambda > 0.0)) throw InvalidInput("pyp-means needs lambda > 0");
    if (!(config.theta >= 0.0)) throw InvalidInput("pyp-means needs theta >= 0");
    if (config.max_iters < 1) throw InvalidInput("max_iters must be at least 1");

    const std::size_t n = data.n();
    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    Partition p = Partition::single_cluster(n);
    auto means = VectorGeometry::weighted_means(data, p);

    RunResult out;
    out.seed = config.seed;
    auto record = [&] {
        out.objective_trace.push_back(pyp_objective(data, p, config.lambda, config.theta, config.squared));
        out.k_trace.push_back(p.k());
    };
    record();

    for (std::size_t it = 0; it < config.max_iters; ++it) {
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t moved = 0;
        for (std::size_t i : order) {
            const ClusterId c = p[i];
            ClusterId best = c;
            double best_d = pyp_dist(data, i, means[c], config.squared);
            for (std::size_t t = 0; t < p.k(); ++t) {
                const double d = pyp_dist(data, i, means[t], config.squared);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<ClusterId>(t);
                }
            }
            const double open_cost = pyp_penalty(p.k() + 1, config.lambda, config.theta) -
                                     pyp_penalty(p.k(), config.lambda, config.theta);
            if (best_d > open_cost && p.size_of(c) > 1) best = kNewCluster;
            if (best == c) continue;
            const ClusterId removed = p.move(i, best);
            if (best == kNewCluster) means.push_back(data.points.row(static_cast<Eigen::Index>(i)).transpose());
            if (removed != kNewCluster) means.erase(means.begin() + removed);
            ++moved;
        }
        means = VectorGeometry::weighted_means(data, p);
        out.moves_trace.push_back(moved);
        record();
        ++out.sweeps_used;
        if (moved == 0) {
            out.converged = true;
            break;
        }
    }
    out.partition = std::move(p);
    return out;
}

} // namespace plcut
