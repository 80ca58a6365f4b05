#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "plcut/errors.hpp"
#include "plcut/metrics.hpp"
#include "plcut/solver.hpp"

using namespace plcut;

namespace {

Partition part(std::vector<std::int64_t> v) { return Partition::from_assignments(std::span<const std::int64_t>(v)); }

Partition random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % k);
    return part(v);
}

oracle::Labels to_oracle(const Partition& p) {
    oracle::Labels a(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) a[i] = static_cast<int>(p[i]);
    return a;
}

} // namespace

TEST(Nmi, Examples) {
    EXPECT_DOUBLE_EQ(nmi(part({0, 0, 1, 1, 2}), part({5, 5, 3, 3, 1})), 1.0);
    EXPECT_EQ(nmi(Partition::single_cluster(4), part({0, 1, 0, 1})), 0.0);
    EXPECT_NEAR(nmi(part({0, 0, 1, 1}), part({0, 1, 0, 1})), 0.0, 1e-15);
    EXPECT_EQ(nmi(Partition::single_cluster(3), Partition::single_cluster(3)), 1.0);
}

TEST(Nmi, Errors) {
    EXPECT_THROW(nmi(part({0, 1}), part({0, 1, 1})), InvalidInput);
}

TEST(Nmi, MatchesContingencyOracle) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_labels(rng, 1 + rng() % 40, 1 + rng() % 6);
        const auto b = random_labels(rng, a.n(), 1 + rng() % 6);
        if (a.k() < 2 || b.k() < 2) continue;
        EXPECT_NEAR(nmi(a, b), oracle::nmi(to_oracle(a), to_oracle(b)), 1e-12);
    }
}

TEST(Nmi, FuzzBoundsSymmetryPermutation) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 10000; ++t) {
        const std::size_t n = 1 + rng() % 30;
        const auto a = random_labels(rng, n, 1 + rng() % 5);
        const auto b = random_labels(rng, n, 1 + rng() % 5);
        const double v = nmi(a, b);
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
        ASSERT_EQ(v, nmi(b, a));
        if (t % 50 == 0) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<std::int64_t> pa(n), pb(n);
            for (std::size_t i = 0; i < n; ++i) {
                pa[i] = a[perm[i]];
                pb[i] = b[perm[i]];
            }
            ASSERT_NEAR(nmi(part(pa), part(pb)), v, 1e-12);
        }
    }
}

TEST(SizeHistogram, Examples) {
    const auto h = size_histogram(part({0, 0, 0, 0, 0, 1, 1, 1, 2}));
    EXPECT_EQ(h.sizes, (std::vector<std::size_t>{5, 3, 1}));
    using P = std::pair<std::size_t, std::size_t>;
    EXPECT_EQ(h.rank_size, (std::vector<P>{{1, 5}, {2, 3}, {3, 1}}));
    const auto flat = size_histogram(part({0, 1, 2, 3, 0, 1, 2, 3}));
    for (const auto& [r, s] : flat.rank_size) EXPECT_EQ(s, 2u);
}

TEST(Audit, ValidRun) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0, 1);
    RowMatrix x(60, 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 0) = g(rng) + 5.0 * (i % 3), x(i, 1) = g(rng);
    VectorDataset data(x);
    VectorGeometry geom(data);
    SolverConfig cfg;
    cfg.params = {0.5, 0.2, 1.0};
    const auto res = run(geom, cfg);
    const auto rep = audit_objective(res, geom, cfg.params);
    EXPECT_TRUE(rep.ok());
    EXPECT_LT(rep.discrepancy, 1e-7);
}

TEST(Audit, CorruptedTraceFlagged) {
    RunResult r;
    r.partition = Partition::single_cluster(3);
    r.objective_trace = {5.0, 4.0, 4.5, 3.0};
    r.assignment_trace = {4.5, 3.9, 4.4, 3.0};
    const auto rep = audit_trace(r);
    EXPECT_TRUE(rep.monotonicity_violation);
    EXPECT_FALSE(rep.ok());
    EXPECT_GT(rep.max_increase, 0.0);
}

TEST(Audit, EmptyTraceRejected) {
    RunResult r;
    r.partition = Partition::single_cluster(3);
    EXPECT_THROW(audit_trace(r), InvalidInput);
}
