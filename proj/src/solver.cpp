#include "plcut/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "plcut/errors.hpp"

namespace plcut {

namespace {

// Relative slack below which a candidate does not count as an improvement.
// Keeps sweeps from cycling on rounding noise.
constexpr double kImprovementTol = 1e-12;

bool improves(double candidate, double best) {
    return candidate < best - kImprovementTol * std::max(1.0, std::abs(best));
}

double regularizer(const Partition& p, const PYParams& params) {
    return -log_eppf(p, params);
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    return std::mt19937_64(seq);
}

// Moves the point farthest from its center (in a cluster of size > 1) into a
// new cluster. Lowers the fixed-center objective by that distance.
bool reseed_one(Geometry& geom, Partition& p) {
    std::size_t best = p.n();
    double best_dist = -1.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (p.size_of(p[i]) < 2) continue;
        const double d = geom.point_to_mean_sq(i, p[i]);
        if (d > best_dist) {
            best_dist = d;
            best = i;
        }
    }
    if (best == p.n()) return false;
    p.move(best, kNewCluster);
    geom.open_cluster(best);
    return true;
}

RunResult run_once(Geometry& geom, const SolverConfig& config, Partition p, std::size_t restart,
                   const SweepProbe& probe) {
    const PYParams& params = config.params;
    const double lambda = params.lambda;
    RunResult out;
    out.seed = config.seed;
    out.restart = restart;
    auto rng = restart_rng(config.seed, restart);

    std::vector<std::size_t> order(p.n());
    std::iota(order.begin(), order.end(), std::size_t{0});

    geom.recenter(p);
    EppfState eppf(params, p);
    double current = geom.kmeans_cost(p) + lambda * regularizer(p, params);
    double tracked = fit_term(geom, p) + lambda * eppf.regularizer();
    out.max_discrepancy = std::abs(tracked - current);
    out.objective_trace.push_back(current);
    out.k_trace.push_back(p.k());
    if (probe) out.probe_trace.push_back(probe(p));

    const bool allow_new = config.fixed_k == 0;
    for (std::size_t s = 0; s < config.max_sweeps; ++s) {
        if (config.order == VisitOrder::kShuffled) std::shuffle(order.begin(), order.end(), rng);
        const SweepStats stats = sweep(geom, p, params, order, allow_new, &eppf);
        tracked += stats.objective_change;
        std::size_t moved = stats.moved;

        if (config.fixed_k != 0) {
            while (p.k() < config.fixed_k && reseed_one(geom, p)) {
                ++out.reseeds;
                ++moved;
            }
            if (moved != stats.moved) {
                eppf.resync(p);
                tracked = fit_term(geom, p) + lambda * eppf.regularizer();
            }
        }

        const double reg = regularizer(p, params);
        const double after_assign = fit_term(geom, p) + lambda * reg;
        out.max_discrepancy = std::max({out.max_discrepancy, std::abs(tracked - after_assign),
                                        lambda * std::abs(eppf.regularizer() - reg)});
        out.assignment_trace.push_back(after_assign);

        geom.recenter(p);
        current = geom.kmeans_cost(p) + lambda * reg;
        tracked = fit_term(geom, p) + lambda * eppf.regularizer();
        out.max_discrepancy = std::max(out.max_discrepancy, std::abs(tracked - current));

        out.objective_trace.push_back(current);
        out.k_trace.push_back(p.k());
        out.moves_trace.push_back(moved);
        if (probe) out.probe_trace.push_back(probe(p));
        ++out.sweeps_used;
        if (moved == 0) {
            out.converged = true;
            break;
        }
    }
    out.partition = std::move(p);
    return out;
}

} // namespace

void SolverConfig::validate() const {
    params.validate();
    if (max_sweeps < 1) throw InvalidInput("max_sweeps must be at least 1");
    if (restarts < 1) throw InvalidInput("restarts must be at least 1");
}

double regularized_objective(const Geometry& geom, const Partition& p, const PYParams& params) {
    return geom.kmeans_cost(p) + params.lambda * regularizer(p, params);
}

std::optional<double> regularized_distance(const Geometry& geom, const Partition& p,
                                           const PYParams& params, std::size_t i,
                                           ClusterId candidate) {
    const ClusterId c = p[i];
    const std::size_t nc = p.size_of(c);
    if (candidate == c) return nc == 1 ? 0.0 : geom.point_to_mean_sq(i, c);
    if (candidate == kNewCluster) {
        const auto delta = move_delta(params, nc, kNewClusterSize, p.k());
        if (!delta) return std::nullopt;
        return params.lambda * *delta;
    }
    const auto delta = move_delta(params, nc, p.size_of(candidate), p.k());
    return geom.point_to_mean_sq(i, candidate) + params.lambda * *delta;
}

SweepStats sweep(Geometry& geom, Partition& p, const PYParams& params,
                 std::span<const std::size_t> order, bool allow_new, EppfState* eppf) {
    SweepStats stats;
    std::vector<double> dist;
    for (std::size_t i : order) {
        const ClusterId c = p[i];
        const std::size_t nc = p.size_of(c);
        const std::size_t k = p.k();
        dist.resize(k);
        geom.point_to_means_sq(i, dist);

        double best = nc == 1 ? 0.0 : dist[c];
        ClusterId choice = c;
        double choice_delta = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            if (t == c) continue;
            const double delta = *move_delta(params, nc, p.size_of(static_cast<ClusterId>(t)), k);
            const double d = dist[t] + params.lambda * delta;
            if (improves(d, best)) {
                best = d;
                choice = static_cast<ClusterId>(t);
                choice_delta = delta;
            }
        }
        if (allow_new) {
            if (const auto delta = move_delta(params, nc, kNewClusterSize, k)) {
                const double d = params.lambda * *delta;
                if (improves(d, best)) {
                    best = d;
                    choice = kNewCluster;
                    choice_delta = *delta;
                }
            }
        }
        if (choice == c) continue;

        const double fit_after = choice == kNewCluster ? 0.0 : dist[choice];
        stats.objective_change += fit_after - dist[c] + params.lambda * choice_delta;
        const std::size_t target_size = choice == kNewCluster ? kNewClusterSize : p.size_of(choice);
        const ClusterId removed = p.move(i, choice);
        if (choice == kNewCluster) geom.open_cluster(i);
        if (removed != kNewCluster) geom.close_cluster(removed);
        if (eppf) eppf->apply_move(nc, target_size, p);
        ++stats.moved;
    }
    return stats;
}

RunResult run(const Geometry& geom, const SolverConfig& config, const SweepProbe& probe) {
    return run_from(geom, config, Partition::single_cluster(geom.size()), probe);
}

RunResult run_from(const Geometry& geom, const SolverConfig& config, const Partition& init,
                   const SweepProbe& probe) {
    config.validate();
    if (init.n() != geom.size()) throw InvalidInput("initial partition size does not match the data");
    if (config.fixed_k != 0 && config.fixed_k > geom.size())
        throw InvalidInput("fixed k exceeds the number of points");

    const std::size_t runs = config.order == VisitOrder::kFixed ? 1 : config.restarts;
    std::vector<std::future<RunResult>> pending;
    pending.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        pending.push_back(std::async(std::launch::async, [&geom, &config, &init, &probe, r] {
            auto own = geom.clone();
            return run_once(*own, config, init, r, probe);
        }));
    }
    std::optional<RunResult> best;
    for (auto& f : pending) {
        RunResult r = f.get();
        if (!best || r.final_objective() < best->final_objective()) best = std::move(r);
    }
    return std::move(*best);
}

} // namespace plcut
