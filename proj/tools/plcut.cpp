#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plcut/baselines.hpp"
#include "plcut/datagen.hpp"
#include "plcut/errors.hpp"
#include "plcut/experiment.hpp"
#include "plcut/graphcuts.hpp"
#include "plcut/io.hpp"
#include "plcut/metrics.hpp"

using namespace plcut;
using nlohmann::json;

namespace {

struct SolverFlags {
    double lambda = 1.0;
    double alpha = 1.0;
    double theta = 0.0;
    std::size_t max_sweeps = 100;
    std::string order = "fixed";
    std::size_t restarts = 1;
    std::uint64_t seed = 0;

    void add(CLI::App* app) {
        app->add_option("--lambda", lambda, "regularizer weight")->capture_default_str();
        app->add_option("--alpha", alpha, "Pitman-Yor concentration")->capture_default_str();
        app->add_option("--theta", theta, "Pitman-Yor discount")->capture_default_str();
        app->add_option("--max-sweeps", max_sweeps)->capture_default_str();
        app->add_option("--order", order)->check(CLI::IsMember({"fixed", "shuffled"}))->capture_default_str();
        app->add_option("--restarts", restarts)->capture_default_str();
        app->add_option("--seed", seed)->capture_default_str();
    }
    SolverConfig config() const {
        SolverConfig c;
        c.params = {alpha, theta, lambda};
        c.max_sweeps = max_sweeps;
        c.order = order == "fixed" ? VisitOrder::kFixed : VisitOrder::kShuffled;
        c.restarts = restarts;
        c.seed = seed;
        return c;
    }
    json to_json() const {
        return {{"lambda", lambda}, {"alpha", alpha}, {"theta", theta}, {"max_sweeps", max_sweeps},
                {"order", order}, {"restarts", restarts}, {"seed", seed}};
    }
};

struct GraphInput {
    std::string path;
    std::string labels;
    std::string objective = "ncut";
    std::string rho = "auto";
    std::string isolated = "error";

    void add(CLI::App* app, bool with_objective = true) {
        app->add_option("--input", path, "edge list")->required()->check(CLI::ExistingFile);
        app->add_option("--labels", labels, "ground-truth labels, one per line")->check(CLI::ExistingFile);
        if (with_objective)
            app->add_option("--objective", objective)->check(CLI::IsMember({"ncut", "rcut", "rassoc"}))->capture_default_str();
        app->add_option("--rho", rho, "kernel diagonal shift or 'auto'")->capture_default_str();
        app->add_option("--isolated", isolated, "zero-degree nodes: error | self-loop")
            ->check(CLI::IsMember({"error", "self-loop"}))->capture_default_str();
    }
    std::optional<double> rho_value() const {
        if (rho == "auto") return std::nullopt;
        try {
            return std::stod(rho);
        } catch (const std::logic_error&) {
            throw InvalidInput("--rho must be a number or 'auto'");
        }
    }
    // Second member: zero-degree nodes found in the file.
    std::pair<WeightedGraph, std::size_t> graph() const {
        WeightedGraph g = load_edge_list(path);
        const std::size_t isolated_nodes = g.isolated_count();
        if (isolated == "self-loop" && isolated_nodes > 0) g = g.with_isolated_self_loops();
        return {std::move(g), isolated_nodes};
    }
    std::optional<Partition> truth(std::size_t n) const {
        if (labels.empty()) return std::nullopt;
        Partition p = load_labels(labels);
        if (p.n() != n) throw InvalidInput("labels do not match the graph size");
        return p;
    }
    json to_json() const {
        return {{"input", path}, {"labels", labels}, {"objective", objective}, {"rho", rho}, {"isolated", isolated}};
    }
};

struct VectorInput {
    std::string path;
    bool has_labels = false;
    bool normalize = false;

    void add(CLI::App* app) {
        app->add_option("--input", path, "CSV of feature rows")->required()->check(CLI::ExistingFile);
        app->add_flag("--has-labels", has_labels, "last column holds ground-truth labels");
        app->add_flag("--normalize", normalize, "min-max each feature to [0, 1]");
    }
    CsvVectors load() const { return load_csv_vectors(path, has_labels, normalize); }
    json to_json() const { return {{"input", path}, {"has_labels", has_labels}, {"normalize", normalize}}; }
};

struct Output {
    std::string json_path;
    std::string assignments;
    std::string rank_size;

    void add(CLI::App* app) {
        app->add_option("--out", json_path, "result JSON (default: stdout)");
        app->add_option("--assignments", assignments, "write final labels, one per line");
        app->add_option("--rank-size", rank_size, "write rank/size TSV");
    }
    void emit(const json& j, const Partition& p) const {
        if (json_path.empty()) std::cout << j.dump(2) << '\n';
        else write_json_atomic(json_path, j);
        if (!assignments.empty()) save_labels(assignments, p);
        if (!rank_size.empty()) write_rank_size_tsv(rank_size, size_histogram(p));
    }
};

json header(const std::string& command) {
    return {{"schema_version", kResultSchemaVersion},
            {"command", command},
            {"timestamp", utc_timestamp()},
            {"conventions", conventions_json()}};
}

void add_truth(json& j, const RunResult& r, const std::optional<Partition>& truth) {
    if (!truth) return;
    j["nmi"] = nmi(r.partition, *truth);
    j["k_true"] = truth->k();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-law graph cuts: Pitman-Yor regularized clustering of graphs and vectors"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate synthetic data")->require_subcommand(1);
    SbmSpec sbm;
    std::string sbm_graph, sbm_labels;
    auto* synth_sbm = synth->add_subcommand("pycrp-sbm", "PYCRP labels + stochastic block model graph");
    synth_sbm->add_option("--n", sbm.n)->required();
    synth_sbm->add_option("--alpha", sbm.alpha)->capture_default_str();
    synth_sbm->add_option("--theta", sbm.theta)->capture_default_str();
    synth_sbm->add_option("--diag-mean", sbm.diag_mean)->capture_default_str();
    synth_sbm->add_option("--diag-var", sbm.diag_var)->capture_default_str();
    synth_sbm->add_option("--off-mean", sbm.off_mean)->capture_default_str();
    synth_sbm->add_option("--off-var", sbm.off_var)->capture_default_str();
    synth_sbm->add_option("--seed", sbm.seed)->capture_default_str();
    synth_sbm->add_option("--out", sbm_graph, "edge list output")->required();
    synth_sbm->add_option("--labels", sbm_labels, "labels output")->required();

    std::size_t blob_n = 200, blob_d = 2;
    double blob_alpha = 1.0, blob_theta = 0.3, blob_std = 0.05, blob_box = 10.0;
    std::uint64_t blob_seed = 0;
    std::string blob_out;
    auto* synth_blobs = synth->add_subcommand("blobs", "Gaussian blobs with PYCRP sizes (CSV, label last)");
    synth_blobs->add_option("--n", blob_n)->capture_default_str();
    synth_blobs->add_option("--d", blob_d)->capture_default_str();
    synth_blobs->add_option("--alpha", blob_alpha)->capture_default_str();
    synth_blobs->add_option("--theta", blob_theta)->capture_default_str();
    synth_blobs->add_option("--std", blob_std)->capture_default_str();
    synth_blobs->add_option("--box", blob_box)->capture_default_str();
    synth_blobs->add_option("--seed", blob_seed)->capture_default_str();
    synth_blobs->add_option("--out", blob_out)->required();

    // graph from-vectors
    auto* graph = app.add_subcommand("graph", "graph construction")->require_subcommand(1);
    VectorInput gv;
    std::string gv_sigma, gv_sparsify = "none", gv_out;
    auto* from_vectors = graph->add_subcommand("from-vectors", "Gaussian similarity graph from a CSV");
    gv.add(from_vectors);
    from_vectors->add_option("--sigma", gv_sigma, "kernel width or 'auto' (median pairwise distance)")->required();
    from_vectors->add_option("--sparsify", gv_sparsify, "none | knn:K | eps:T")->capture_default_str();
    from_vectors->add_option("--out", gv_out, "edge list output")->required();

    // cluster
    auto* cluster = app.add_subcommand("cluster", "power-law clustering")->require_subcommand(1);
    GraphInput cg;
    SolverFlags cg_solver;
    Output cg_out;
    auto* cluster_graph = cluster->add_subcommand("graph", "power-law graph cut");
    cg.add(cluster_graph);
    cg_solver.add(cluster_graph);
    cg_out.add(cluster_graph);

    VectorInput cv;
    SolverFlags cv_solver;
    Output cv_out;
    auto* cluster_vectors = cluster->add_subcommand("vectors", "power-law means on vectors");
    cv.add(cluster_vectors);
    cv_solver.add(cluster_vectors);
    cv_out.add(cluster_vectors);

    // baselines
    auto* baseline = app.add_subcommand("baseline", "comparison methods")->require_subcommand(1);
    GraphInput bk;
    std::size_t bk_k = 0, bk_sweeps = 100;
    std::uint64_t bk_seed = 0;
    Output bk_out;
    auto* kkm = baseline->add_subcommand("kkm", "fixed-k weighted kernel k-means on a graph kernel");
    bk.add(kkm);
    kkm->add_option("--k", bk_k, "number of clusters (default: k of --labels)");
    kkm->add_option("--max-sweeps", bk_sweeps)->capture_default_str();
    kkm->add_option("--seed", bk_seed)->capture_default_str();
    bk_out.add(kkm);

    VectorInput bm;
    std::size_t bm_k = 0, bm_iters = 100;
    std::uint64_t bm_seed = 0;
    Output bm_out;
    auto* km = baseline->add_subcommand("kmeans", "Lloyd k-means with k-means++ seeding");
    bm.add(km);
    km->add_option("--k", bm_k, "number of clusters (default: k of the labels)");
    km->add_option("--max-iters", bm_iters)->capture_default_str();
    km->add_option("--seed", bm_seed)->capture_default_str();
    bm_out.add(km);

    VectorInput bp;
    PypMeansConfig pyp_cfg;
    Output bp_out;
    auto* pyp = baseline->add_subcommand("pyp", "pyp-means");
    bp.add(pyp);
    pyp->add_option("--lambda", pyp_cfg.lambda)->capture_default_str();
    pyp->add_option("--theta", pyp_cfg.theta)->capture_default_str();
    pyp->add_option("--seed", pyp_cfg.seed)->capture_default_str();
    pyp->add_option("--max-iters", pyp_cfg.max_iters)->capture_default_str();
    pyp->add_flag("--squared", pyp_cfg.squared, "squared distances in the fit term");
    bp_out.add(pyp);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluation")->require_subcommand(1);
    std::string nmi_a, nmi_b;
    auto* eval_nmi = eval->add_subcommand("nmi", "NMI between two label files");
    eval_nmi->add_option("a", nmi_a)->required()->check(CLI::ExistingFile);
    eval_nmi->add_option("b", nmi_b)->required()->check(CLI::ExistingFile);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps")->require_subcommand(1);
    std::string sweep_config;
    auto* sweep_run = sweep_cmd->add_subcommand("run", "grid search + final run from a JSON config");
    sweep_run->add_option("--config", sweep_config)->required()->check(CLI::ExistingFile);

    // audit
    std::string audit_result;
    auto* audit = app.add_subcommand("audit", "re-check a cluster result against its input");
    audit->add_option("--result", audit_result, "JSON written by 'cluster graph' or 'cluster vectors'")
        ->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_sbm->parsed()) {
            auto [g, labels] = sample_pycrp_sbm(sbm);
            save_edge_list(sbm_graph, g);
            save_labels(sbm_labels, labels);
            std::cout << json{{"n", g.size()}, {"k", labels.k()}, {"edges", g.edges().size()},
                              {"isolated", g.isolated_count()}}.dump() << '\n';
        } else if (synth_blobs->parsed()) {
            auto [data, labels] = sample_power_law_blobs(blob_n, blob_d, PYParams{blob_alpha, blob_theta, 0.0},
                                                         blob_std, blob_box, blob_seed);
            save_csv_vectors(blob_out, data, &labels);
            std::cout << json{{"n", data.n()}, {"k", labels.k()}}.dump() << '\n';
        } else if (from_vectors->parsed()) {
            const auto csv = gv.load();
            double sigma = 0.0;
            if (gv_sigma == "auto") {
                sigma = median_pairwise_distance(csv.data);
            } else {
                std::size_t used = 0;
                try {
                    sigma = std::stod(gv_sigma, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != gv_sigma.size() || !(sigma > 0.0))
                    throw InvalidInput("--sigma must be a positive number or 'auto', got '" + gv_sigma + "'");
            }
            const auto g = gaussian_similarity_graph(csv.data, sigma, parse_sparsify(gv_sparsify));
            save_edge_list(gv_out, g);
            std::cout << json{{"n", g.size()}, {"edges", g.edges().size()}, {"sigma", sigma}}.dump() << '\n';
        } else if (cluster_graph->parsed()) {
            const auto [g, isolated_nodes] = cg.graph();
            const auto truth = cg.truth(g.size());
            const auto res = power_law_cut(g, parse_cut_kind(cg.objective), cg_solver.config(), cg.rho_value());
            json j = header("cluster graph");
            j["config"] = cg.to_json();
            j["config"].update(cg_solver.to_json());
            j["rho"] = res.rho;
            j["isolated_nodes"] = isolated_nodes;
            j["run"] = run_json(res.run);
            add_truth(j, res.run, truth);
            cg_out.emit(j, res.run.partition);
        } else if (cluster_vectors->parsed()) {
            const auto csv = cv.load();
            VectorGeometry geom(csv.data);
            const auto r = run(geom, cv_solver.config());
            json j = header("cluster vectors");
            j["config"] = cv.to_json();
            j["config"].update(cv_solver.to_json());
            j["run"] = run_json(r);
            add_truth(j, r, csv.labels);
            cv_out.emit(j, r.partition);
        } else if (kkm->parsed()) {
            const auto [g, isolated_nodes] = bk.graph();
            const auto truth = bk.truth(g.size());
            std::size_t k = bk_k ? bk_k : (truth ? truth->k() : 0);
            if (k == 0) throw InvalidInput("give --k or --labels");
            const auto kp = build_kernel(g, parse_cut_kind(bk.objective), bk.rho_value());
            const auto r = weighted_kernel_kmeans(kp, k, KMeansInit{bk_seed}, bk_sweeps);
            json j = header("baseline kkm");
            j["config"] = bk.to_json();
            j["config"].update({{"k", k}, {"max_sweeps", bk_sweeps}, {"seed", bk_seed}});
            j["rho"] = kp.rho;
            j["isolated_nodes"] = isolated_nodes;
            j["run"] = run_json(r);
            add_truth(j, r, truth);
            bk_out.emit(j, r.partition);
        } else if (km->parsed()) {
            const auto csv = bm.load();
            std::size_t k = bm_k ? bm_k : (csv.labels ? csv.labels->k() : 0);
            if (k == 0) throw InvalidInput("give --k or --has-labels");
            const auto r = kmeans(csv.data, k, KMeansInit{bm_seed}, bm_iters);
            json j = header("baseline kmeans");
            j["config"] = bm.to_json();
            j["config"].update({{"k", k}, {"max_iters", bm_iters}, {"seed", bm_seed}});
            j["run"] = run_json(r);
            add_truth(j, r, csv.labels);
            bm_out.emit(j, r.partition);
        } else if (pyp->parsed()) {
            const auto csv = bp.load();
            const auto r = pyp_means(csv.data, pyp_cfg);
            json j = header("baseline pyp");
            j["config"] = bp.to_json();
            j["config"].update({{"lambda", pyp_cfg.lambda}, {"theta", pyp_cfg.theta}, {"seed", pyp_cfg.seed},
                                {"max_iters", pyp_cfg.max_iters}, {"squared", pyp_cfg.squared}});
            j["run"] = run_json(r);
            j["singletons_objective"] = pyp_objective(csv.data, Partition::singletons(csv.data.n()), pyp_cfg.lambda,
                                                      pyp_cfg.theta, pyp_cfg.squared);
            add_truth(j, r, csv.labels);
            bp_out.emit(j, r.partition);
        } else if (eval_nmi->parsed()) {
            const Partition a = load_labels(nmi_a);
            const Partition b = load_labels(nmi_b);
            std::printf("%.17g\n", nmi(a, b));
        } else if (sweep_run->parsed()) {
            const auto cfg = ExperimentConfig::from_json(read_json(sweep_config));
            const auto out = run_experiment(cfg);
            const auto& sel = out.cells[out.selected];
            std::cout << json{{"result", (cfg.output / "result.json").string()},
                              {"selected_cell", sel.index},
                              {"k", out.result["ours"]["k"]},
                              {"nmi", out.result["ours"]["nmi"]}}.dump() << '\n';
        } else if (audit->parsed()) {
            const json r = read_json(audit_result);
            const std::string command = r.at("command");
            const json& cfg = r.at("config");
            const json& run_j = r.at("run");
            RunResult rr;
            rr.objective_trace = run_j.at("objective_trace").get<std::vector<double>>();
            rr.assignment_trace = run_j.at("assignment_trace").get<std::vector<double>>();
            rr.max_discrepancy = run_j.value("max_discrepancy", 0.0);
            const auto labels = run_j.at("assignments").get<std::vector<ClusterId>>();
            rr.partition = Partition::from_assignments(std::span<const ClusterId>(labels));
            const PYParams params{cfg.at("alpha"), cfg.at("theta"), cfg.at("lambda")};
            AuditReport rep;
            if (command == "cluster graph") {
                GraphInput gi;
                gi.path = cfg.at("input");
                gi.isolated = cfg.value("isolated", std::string("error"));
                const WeightedGraph g = gi.graph().first;
                const auto kp = build_kernel(g, parse_cut_kind(cfg.at("objective").get<std::string>()),
                                             r.at("rho").get<double>());
                KernelGeometry geom(kp);
                rep = audit_objective(rr, geom, params);
            } else if (command == "cluster vectors") {
                const auto csv = load_csv_vectors(cfg.at("input").get<std::string>(), cfg.value("has_labels", false),
                                                  cfg.value("normalize", false));
                VectorGeometry geom(csv.data);
                rep = audit_objective(rr, geom, params);
            } else {
                throw InvalidInput("audit supports results of 'cluster graph' and 'cluster vectors'");
            }
            std::cout << json{{"monotone", !rep.monotonicity_violation},
                              {"first_violation", rep.monotonicity_violation ? json(rep.first_violation) : json(nullptr)},
                              {"max_increase", rep.max_increase},
                              {"reported_final", rr.final_objective()},
                              {"recomputed_final", rep.recomputed_final},
                              {"discrepancy", rep.discrepancy},
                              {"ok", rep.ok()}}.dump(2) << '\n';
            return rep.ok() ? 0 : 3;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
