// Acceptance suite. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion ...]   (no arguments runs all of them)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "plcut/baselines.hpp"
#include "plcut/datagen.hpp"
#include "plcut/eppf.hpp"
#include "plcut/experiment.hpp"
#include "plcut/graphcuts.hpp"
#include "plcut/io.hpp"
#include "plcut/metrics.hpp"
#include "plcut/solver.hpp"

#ifndef PLCUT_CLI_PATH
#error "PLCUT_CLI_PATH must name the plcut executable"
#endif

using namespace plcut;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("plcut_acc_" + tag + "_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Partition part(const oracle::Labels& a) {
    std::vector<std::int64_t> v(a.begin(), a.end());
    return Partition::from_assignments(std::span<const std::int64_t>(v));
}

Partition random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % k);
    return Partition::from_assignments(std::span<const std::int64_t>(v));
}

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int n, int rank) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd V(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) V(i, j) = g(rng);
    return V * V.transpose();
}

VectorDataset random_vectors(std::mt19937_64& rng, std::size_t n, std::size_t d, bool weighted) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    Eigen::VectorXd wt(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = g(rng) + 3.0 * static_cast<double>(i % 3);
        wt[i] = weighted ? w(rng) : 1.0;
    }
    return VectorDataset(x, wt);
}

PYParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> th(0.0, 0.9), al(0.1, 3.0), lam(0.0, 5.0);
    const double theta = th(rng);
    return {al(rng) - 0.5 * theta, theta, lam(rng)};
}

// ---------------------------------------------------------------- 1

Verdict eppf_correctness() {
    Verdict v;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> th(0.0, 0.95), u(0.0, 1.0);
    double worst_sum = 0.0, worst_crp = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const double theta = th(rng);
        const double alpha = -theta + 0.05 + 5.0 * u(rng);
        const PYParams py{alpha, theta, 1.0};
        const PYParams crp{alpha + theta, 0.0, 1.0};
        for (std::size_t n = 1; n <= 8; ++n) {
            double total = 0.0;
            oracle::for_each_set_partition(n, [&](const oracle::Labels& a) {
                const auto sizes = oracle::sizes_of(a);
                total += std::exp(log_eppf(sizes, py));
                // alpha^k Gamma(alpha) / Gamma(alpha + n) prod (n_c - 1)!
                const double a0 = crp.alpha;
                double closed = std::pow(a0, static_cast<double>(sizes.size())) *
                                std::exp(std::lgamma(a0) - std::lgamma(a0 + static_cast<double>(n)));
                for (auto s : sizes) closed *= std::tgamma(static_cast<double>(s));
                worst_crp = std::max(worst_crp, std::abs(std::exp(log_eppf(sizes, crp)) - closed));
            });
            worst_sum = std::max(worst_sum, std::abs(total - 1.0));
        }
    }
    if (worst_sum > 1e-8) v.fail("normalization off by " + fmt("%.3g", worst_sum));
    if (worst_crp > 1e-10) v.fail("CRP closed form off by " + fmt("%.3g", worst_crp));
    if (v.pass) v.detail = "max |sum-1| " + fmt("%.2g", worst_sum) + ", max CRP error " + fmt("%.2g", worst_crp);
    return v;
}

// ---------------------------------------------------------------- 2

Verdict sampler_consistency() {
    Verdict v;
    const std::size_t n = 6;
    const PYParams py{1.0, 0.5, 1.0};
    std::map<std::vector<std::size_t>, std::size_t> multiplicity;
    oracle::for_each_set_partition(n, [&](const oracle::Labels& a) {
        auto s = oracle::sizes_of(a);
        std::sort(s.begin(), s.end());
        ++multiplicity[s];
    });
    const std::size_t draws = 200000;
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (std::size_t d = 0; d < draws; ++d) {
        const auto p = sample_pycrp(n, py.alpha, py.theta, 7000000 + d);
        std::vector<std::size_t> s(p.sizes().begin(), p.sizes().end());
        std::sort(s.begin(), s.end());
        ++seen[s];
    }
    double worst = 0.0;
    for (const auto& [sizes, mult] : multiplicity) {
        const double prob = std::exp(log_eppf(sizes, py)) * static_cast<double>(mult);
        const double expected = prob * static_cast<double>(draws);
        const double sigma = std::sqrt(static_cast<double>(draws) * prob * (1.0 - prob));
        const double z = std::abs(static_cast<double>(seen[sizes]) - expected) / sigma;
        worst = std::max(worst, z);
    }
    for (const auto& [sizes, count] : seen)
        if (!multiplicity.count(sizes)) v.fail("sampled an impossible size multiset");
    if (worst > 3.0) v.fail("max |z| " + fmt("%.2f", worst) + " > 3");
    if (v.pass) v.detail = std::to_string(multiplicity.size()) + " multisets, max |z| " + fmt("%.2f", worst);
    return v;
}

// ---------------------------------------------------------------- 3

Verdict growth_law() {
    Verdict v;
    auto mean_k = [](std::size_t n, std::uint64_t base) {
        double total = 0.0;
        for (std::uint64_t s = 0; s < 200; ++s) total += static_cast<double>(sample_pycrp(n, 1.0, 0.5, base + s).k());
        return total / 200.0;
    };
    const double k1 = mean_k(1000, 1000);
    const double k4 = mean_k(4000, 5000);
    const double ratio = k4 / k1;
    v.detail = "E[k] " + fmt("%.2f", k1) + " -> " + fmt("%.2f", k4) + ", ratio " + fmt("%.3f", ratio);
    if (ratio < 1.7 || ratio > 2.3) v.fail(v.detail + " outside [1.7, 2.3]");
    return v;
}

// ---------------------------------------------------------------- 4

Verdict equivalence_oracle() {
    Verdict v;
    std::mt19937_64 rng(404);
    double worst_spread = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + static_cast<std::size_t>(t % 3);
        const auto A = oracle::random_connected_graph(n, rng);
        const auto kp = build_kernel(WeightedGraph::from_dense(A), CutKind::kNormalizedCut);
        for (int k : {2, 3}) {
            double lo = INFINITY, hi = -INFINITY, best_kk = INFINITY, best_nc = INFINITY;
            std::vector<std::pair<double, double>> values;
            for (const auto& a : oracle::partitions_with_k(n, k)) {
                const double kk = kernel_kmeans_cost(kp, part(a));
                const double nc = oracle::ncut(A, a);
                values.emplace_back(kk, nc);
                lo = std::min(lo, kk - nc);
                hi = std::max(hi, kk - nc);
                best_kk = std::min(best_kk, kk);
                best_nc = std::min(best_nc, nc);
            }
            worst_spread = std::max(worst_spread, hi - lo);
            // every kernel argmin is an ncut argmin and vice versa
            for (const auto& [kk, nc] : values) {
                const bool kk_min = kk <= best_kk + 1e-9, nc_min = nc <= best_nc + 1e-9;
                if (kk_min != nc_min) v.fail("argmin sets differ on graph " + std::to_string(t));
            }
        }
    }
    if (worst_spread > 1e-7) v.fail("objective - NCut varies by " + fmt("%.3g", worst_spread));
    if (v.pass) v.detail = "50 graphs, max spread " + fmt("%.2g", worst_spread);
    return v;
}

// ---------------------------------------------------------------- 5

Verdict monotone_descent() {
    Verdict v;
    std::mt19937_64 rng(505);
    double worst_disc = 0.0;
    int runs = 0;
    for (int t = 0; t < 200; ++t) {
        SolverConfig cfg;
        cfg.params = random_params(rng);
        cfg.order = rng() % 2 ? VisitOrder::kShuffled : VisitOrder::kFixed;
        cfg.seed = rng();
        RunResult r;
        AuditReport rep;
        if (t % 2 == 0) {
            const auto d = random_vectors(rng, 20 + rng() % 60, 1 + rng() % 4, rng() % 2);
            VectorGeometry geom(d);
            r = run(geom, cfg);
            rep = audit_objective(r, geom, cfg.params);
        } else {
            const auto A = oracle::random_connected_graph(15 + rng() % 40, rng, 0.15);
            const auto kind = static_cast<CutKind>(rng() % 3);
            const auto kp = build_kernel(WeightedGraph::from_dense(A), kind);
            KernelGeometry geom(kp);
            r = run(geom, cfg);
            rep = audit_objective(r, geom, cfg.params);
        }
        ++runs;
        worst_disc = std::max({worst_disc, rep.discrepancy, r.max_discrepancy});
        if (rep.monotonicity_violation)
            v.fail("run " + std::to_string(t) + " increased by " + fmt("%.3g", rep.max_increase));
    }
    if (worst_disc >= 1e-7) v.fail("incremental vs scratch discrepancy " + fmt("%.3g", worst_disc));
    if (v.pass) v.detail = std::to_string(runs) + " runs, max discrepancy " + fmt("%.2g", worst_disc);
    return v;
}

// ---------------------------------------------------------------- 6

// Weighted fit against explicit centers plus lambda * (-ln EPPF), from scratch.
double scratch_objective(const VectorDataset& d, const Partition& p, const std::vector<Eigen::VectorXd>& mu,
                         const PYParams& params) {
    double fit = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        fit += d.weights[r] * (d.points.row(r).transpose() - mu[p[i]]).squaredNorm();
    }
    const std::vector<std::size_t> sizes(p.sizes().begin(), p.sizes().end());
    return fit - params.lambda * std::log(oracle::eppf(sizes, params.alpha, params.theta));
}

Verdict delta_vs_oracle() {
    Verdict v;
    std::mt19937_64 rng(606);
    double worst = 0.0;
    int checked = 0;
    while (checked < 10000) {
        const PYParams params = random_params(rng);
        VectorDataset feats;
        std::optional<KernelProblem> kp;
        std::unique_ptr<Geometry> geom;
        const std::size_t n = 3 + rng() % 10;
        if (checked % 2 == 0) {
            feats = random_vectors(rng, n, 1 + rng() % 3, true);
            geom = std::make_unique<VectorGeometry>(feats);
        } else {
            // kernel mode: the oracle works on an explicit factorization of K
            std::uniform_real_distribution<double> w(0.5, 2.0);
            const auto K = random_psd(rng, static_cast<int>(n), 1 + static_cast<int>(rng() % n));
            std::vector<double> wt(n);
            for (auto& x : wt) x = w(rng);
            const RowMatrix phi = oracle::embed(K);
            feats = VectorDataset(phi, Eigen::Map<const Eigen::VectorXd>(wt.data(), static_cast<Eigen::Index>(n)));
            kp = KernelProblem::from_dense(K, wt);
            geom = std::make_unique<KernelGeometry>(*kp);
        }
        const auto p = random_labels(rng, n, 1 + rng() % 4);
        geom->recenter(p);
        const std::size_t i = rng() % n;
        const std::size_t t = rng() % (p.k() + 1);
        const ClusterId cand = t == p.k() ? kNewCluster : static_cast<ClusterId>(t);
        const auto dc = regularized_distance(*geom, p, params, i, cand);
        if (!dc) continue;
        const double stay = *regularized_distance(*geom, p, params, i, p[i]);

        auto centers = VectorGeometry::weighted_means(feats, p);
        const double before = scratch_objective(feats, p, centers, params);
        Partition q = p;
        const ClusterId removed = q.move(i, cand);
        if (cand == kNewCluster) centers.push_back(feats.points.row(static_cast<Eigen::Index>(i)).transpose());
        if (removed != kNewCluster) centers.erase(centers.begin() + removed);
        const double after = scratch_objective(feats, q, centers, params);
        worst = std::max(worst, std::abs((*dc - stay) - (after - before)));
        ++checked;
    }
    if (worst > 1e-8) v.fail("max delta error " + fmt("%.3g", worst));
    else v.detail = "10000 moves, max error " + fmt("%.2g", worst);
    return v;
}

// ---------------------------------------------------------------- 7

Verdict sbm_benchmark() {
    Verdict v;
    std::vector<double> ours, kkm;
    std::string per_seed;
    TempDir tmp("sbm");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ExperimentConfig c;
        c.input.kind = "pycrp-sbm";
        c.input.sbm.n = 1000;
        c.input.sbm.alpha = 1.0;
        c.input.sbm.theta = 0.2;
        c.input.sbm.diag_mean = 0.3;
        c.input.sbm.diag_var = 0.001;
        c.input.sbm.off_mean = 0.01;
        c.input.sbm.off_var = 0.001;
        c.input.sbm.seed = seed;
        InputSpec val = c.input;
        val.sbm.seed = seed + 1000;
        c.validation = val;
        c.objective = "ncut";
        c.isolated = "self-loop";
        c.lambdas.clear();
        for (int i = 0; i < 24; ++i) c.lambdas.push_back(0.01 * std::pow(20.0, i / 23.0));
        c.alphas = {0.1, 1.0};
        c.thetas = {0.0, 0.2};
        c.baseline = "kkm";
        c.seed = seed;
        c.output = tmp.path / ("seed" + std::to_string(seed));
        const auto out = run_experiment(c);
        const double a = out.result["ours"]["nmi"].get<double>();
        const double b = out.result["baseline"]["nmi"].get<double>();
        ours.push_back(a);
        kkm.push_back(b);
        per_seed += " [k=" + std::to_string(out.result["ours"]["k"].get<std::size_t>()) + "/" +
                    std::to_string(out.result["k_true"].get<std::size_t>()) + " ours " + fmt("%.3f", a) +
                    " kkm " + fmt("%.3f", b) + "]";
    }
    int wins = 0;
    for (std::size_t s = 0; s < ours.size(); ++s) wins += ours[s] > kkm[s];
    auto sorted = ours;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[2];
    v.detail = "wins " + std::to_string(wins) + "/5, median NMI " + fmt("%.3f", median) + ";" + per_seed;
    if (wins < 4) v.fail(v.detail + "; ordering needs >= 4/5");
    if (median < 0.75) v.fail(v.detail + "; median NMI below 0.75");
    return v;
}

// ---------------------------------------------------------------- 8

Verdict pyp_triviality() {
    Verdict v;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RowMatrix x(500, 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 0) = u(rng), x(i, 1) = u(rng);
    const VectorDataset d(x);
    double margin = INFINITY;
    for (double lambda : {1.0, 3.0}) {
        const double theta = lambda / 6.0;
        const double trivial = pyp_objective(d, Partition::singletons(500), lambda, theta);
        for (std::uint64_t s = 0; s < 20; ++s) {
            PypMeansConfig cfg{lambda, theta, s, 100, false};
            const auto r = pyp_means(d, cfg);
            const double obj = pyp_objective(d, r.partition, lambda, theta);
            margin = std::min(margin, obj - trivial);
            if (trivial > obj)
                v.fail("lambda " + fmt("%g", lambda) + " seed " + std::to_string(s) + ": output beats singletons");
        }
    }
    if (v.pass) v.detail = "40 runs, min objective gap over singletons " + fmt("%.3f", margin);
    return v;
}

// ---------------------------------------------------------------- 9

Verdict kernel_vs_embedding() {
    Verdict v;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> w(0.2, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto K = random_psd(rng, 8, 1 + static_cast<int>(rng() % 8));
        std::vector<double> wt(8);
        for (auto& x : wt) x = w(rng);
        const auto kp = KernelProblem::from_dense(K, wt);
        const auto p = random_labels(rng, 8, 3);
        const Eigen::MatrixXd phi = oracle::embed(K);
        for (ClusterId c = 0; c < p.k(); ++c) {
            Eigen::VectorXd mu = Eigen::VectorXd::Zero(phi.cols());
            double mass = 0.0;
            for (std::size_t j = 0; j < 8; ++j)
                if (p[j] == c) {
                    mu += wt[j] * phi.row(static_cast<Eigen::Index>(j)).transpose();
                    mass += wt[j];
                }
            mu /= mass;
            for (std::size_t i = 0; i < 8; ++i) {
                const double ref = wt[i] * (phi.row(static_cast<Eigen::Index>(i)).transpose() - mu).squaredNorm();
                worst = std::max(worst, std::abs(kernel_point_to_mean_sq(kp, p, i, c) - ref));
            }
        }
    }
    if (worst > 1e-8) v.fail("max error " + fmt("%.3g", worst));
    else v.detail = "100 kernels, max error " + fmt("%.2g", worst);
    return v;
}

// ---------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int shell(const std::string& cmd) { return std::system(cmd.c_str()); }

// Output of one invocation that must not change between runs.
std::string fingerprint(const std::vector<fs::path>& files, const fs::path& stdout_file) {
    std::string out;
    for (const auto& f : files) {
        if (f.extension() == ".json") {
            auto j = read_json(f);
            j.erase("timestamp");
            out += j.dump() + '\n';
        } else {
            out += slurp(f) + '\n';
        }
    }
    std::string so = slurp(stdout_file);
    if (!so.empty() && so.front() == '{') {
        auto j = nlohmann::json::parse(so);
        j.erase("timestamp");
        so = j.dump();
    }
    return out + so;
}

Verdict determinism() {
    Verdict v;
    TempDir tmp("det");
    const std::string cli = PLCUT_CLI_PATH;
    const fs::path dir = tmp.path;
    auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    const fs::path g = dir / "g.txt", l = dir / "l.txt", b = dir / "b.csv", gv = dir / "gv.txt";
    const fs::path r = dir / "r.json", a = dir / "a.txt", ag = dir / "ag.txt", cfg = dir / "sweep.json", so = dir / "stdout.txt";

    struct Step {
        std::string name;
        std::string args;
        std::vector<fs::path> files;
    };
    const std::vector<Step> steps{
        {"synth pycrp-sbm", "synth pycrp-sbm --n 150 --alpha 1 --theta 0.2 --seed 3 --out " + q(g) + " --labels " + q(l), {g, l}},
        {"synth blobs", "synth blobs --n 120 --d 2 --alpha 1 --theta 0.3 --std 0.2 --seed 4 --out " + q(b), {b}},
        {"graph from-vectors", "graph from-vectors --input " + q(b) + " --has-labels --sigma auto --sparsify knn:8 --out " + q(gv), {gv}},
        {"cluster graph", "cluster graph --input " + q(g) + " --labels " + q(l) +
             " --isolated self-loop --lambda 0.05 --alpha 0.1 --order shuffled --restarts 3 --seed 7 --out " + q(r) +
             " --assignments " + q(ag), {r, ag}},
        {"cluster vectors", "cluster vectors --input " + q(b) + " --has-labels --lambda 0.5 --alpha 0.1 --order shuffled"
             " --restarts 3 --seed 8 --out " + q(r) + " --assignments " + q(a), {r, a}},
        {"audit", "audit --result " + q(r), {}},
        {"baseline kkm", "baseline kkm --input " + q(g) + " --labels " + q(l) + " --isolated self-loop --seed 5 --out " +
             q(r) + " --assignments " + q(a), {r, a}},
        {"baseline kmeans", "baseline kmeans --input " + q(b) + " --has-labels --seed 6 --out " + q(r) +
             " --assignments " + q(a), {r, a}},
        {"baseline pyp", "baseline pyp --input " + q(b) + " --has-labels --lambda 1 --theta 0.1 --seed 9 --out " + q(r) +
             " --assignments " + q(a), {r, a}},
        {"eval nmi", "eval nmi " + q(ag) + " " + q(l), {}},
        {"sweep run", "sweep run --config " + q(cfg), {dir / "sweep" / "result.json"}},
    };

    ExperimentConfig sc;
    sc.input.path = g.string();
    sc.input.labels = l.string();
    sc.isolated = "self-loop";
    sc.lambdas = {0.02, 0.05, 0.2};
    sc.alphas = {0.1, 1.0};
    sc.split = 0.3;
    sc.order = VisitOrder::kShuffled;
    sc.output = dir / "sweep";
    sc.seed = 11;
    sc.threads = 2;

    int checked = 0;
    for (const auto& step : steps) {
        if (step.name == "sweep run") write_json_atomic(cfg, sc.to_json());
        std::array<std::string, 2> prints;
        for (int rep = 0; rep < 2; ++rep) {
            const int rc = shell("'" + cli + "' " + step.args + " > " + q(so) + " 2>/dev/null");
            if (rc != 0) {
                v.fail(step.name + " exited with status " + std::to_string(rc));
                return v;
            }
            prints[rep] = fingerprint(step.files, so);
        }
        if (prints[0] != prints[1]) v.fail(step.name + " differs between runs");
        ++checked;
    }
    if (v.pass) v.detail = std::to_string(checked) + " subcommands reproduced byte for byte";
    return v;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "EPPF normalization and CRP closed form", 10, eppf_correctness},
        {2, "sampler frequencies match the EPPF", 30, sampler_consistency},
        {3, "cluster count growth ratio", 60, growth_law},
        {4, "kernel objective equals NCut up to a constant", 120, equivalence_oracle},
        {5, "monotone descent and incremental bookkeeping", 120, monotone_descent},
        {6, "move deltas match from-scratch objectives", 120, delta_vs_oracle},
        {7, "SBM benchmark against fixed-k kernel k-means", 300, sbm_benchmark},
        {8, "pyp-means objective prefers all singletons", 60, pyp_triviality},
        {9, "kernel distance matches explicit embedding", 10, kernel_vs_embedding},
        {10, "CLI determinism", 120, determinism},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto t0 = Clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > c.budget_s) v.fail(v.detail + "; took " + fmt("%.1f", secs) + " s, budget " + fmt("%.0f", c.budget_s) + " s");
        failures += !v.pass;
        std::printf("%s criterion %d: %s (%s) [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
