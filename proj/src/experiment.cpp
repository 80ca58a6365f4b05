#include "plcut/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "plcut/baselines.hpp"
#include "plcut/io.hpp"
#include "plcut/metrics.hpp"

namespace plcut {

using nlohmann::json;

// ---------------------------------------------------------------- datasets

std::size_t Dataset::size() const {
    if (graph) return graph->size();
    if (vectors) return vectors->n();
    return 0;
}

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
    Dataset out;
    if (graph) out.graph = graph->induced(idx);
    if (vectors) {
        RowMatrix pts(static_cast<Eigen::Index>(idx.size()), vectors->points.cols());
        Eigen::VectorXd w(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const auto src = static_cast<Eigen::Index>(idx[r]);
            pts.row(static_cast<Eigen::Index>(r)) = vectors->points.row(src);
            w[static_cast<Eigen::Index>(r)] = vectors->weights[src];
        }
        out.vectors = VectorDataset(std::move(pts), std::move(w));
    }
    if (truth) {
        std::vector<ClusterId> labels;
        labels.reserve(idx.size());
        for (auto i : idx) labels.push_back((*truth)[i]);
        out.truth = Partition::from_assignments(std::span<const ClusterId>(labels));
    }
    return out;
}

Dataset load_input(const InputSpec& spec) {
    Dataset d;
    if (spec.kind == "edge-list") {
        d.graph = load_edge_list(spec.path);
        if (!spec.labels.empty()) {
            d.truth = load_labels(spec.labels);
            if (d.truth->n() != d.graph->size())
                throw InvalidInput("labels file has " + std::to_string(d.truth->n()) + " entries, graph has " +
                                   std::to_string(d.graph->size()) + " nodes");
        }
    } else if (spec.kind == "csv") {
        auto csv = load_csv_vectors(spec.path, spec.has_labels, spec.normalize);
        d.vectors = std::move(csv.data);
        d.truth = std::move(csv.labels);
    } else if (spec.kind == "pycrp-sbm") {
        auto [g, labels] = sample_pycrp_sbm(spec.sbm);
        d.graph = std::move(g);
        d.truth = std::move(labels);
    } else if (spec.kind == "blobs") {
        auto [data, labels] = sample_power_law_blobs(spec.blobs_n, spec.blobs_d,
                                                     PYParams{spec.blobs_alpha, spec.blobs_theta, 0.0},
                                                     spec.blobs_std, spec.blobs_box, spec.blobs_seed);
        d.vectors = std::move(data);
        d.truth = std::move(labels);
    } else {
        throw InvalidInput("unknown input kind '" + spec.kind + "'");
    }
    return d;
}

// ---------------------------------------------------------------- config

namespace {

InputSpec input_from_json(const json& j) {
    InputSpec s;
    s.kind = j.value("kind", s.kind);
    s.path = j.value("path", s.path);
    s.labels = j.value("labels", s.labels);
    s.has_labels = j.value("has_labels", s.has_labels);
    s.normalize = j.value("normalize", s.normalize);
    if (j.contains("sbm")) {
        const json& b = j["sbm"];
        s.sbm.n = b.value("n", s.sbm.n);
        s.sbm.alpha = b.value("alpha", s.sbm.alpha);
        s.sbm.theta = b.value("theta", s.sbm.theta);
        s.sbm.diag_mean = b.value("diag_mean", s.sbm.diag_mean);
        s.sbm.diag_var = b.value("diag_var", s.sbm.diag_var);
        s.sbm.off_mean = b.value("off_mean", s.sbm.off_mean);
        s.sbm.off_var = b.value("off_var", s.sbm.off_var);
        s.sbm.seed = b.value("seed", s.sbm.seed);
    }
    if (j.contains("blobs")) {
        const json& b = j["blobs"];
        s.blobs_n = b.value("n", s.blobs_n);
        s.blobs_d = b.value("d", s.blobs_d);
        s.blobs_alpha = b.value("alpha", s.blobs_alpha);
        s.blobs_theta = b.value("theta", s.blobs_theta);
        s.blobs_std = b.value("std", s.blobs_std);
        s.blobs_box = b.value("box", s.blobs_box);
        s.blobs_seed = b.value("seed", s.blobs_seed);
    }
    return s;
}

json input_to_json(const InputSpec& s) {
    json j{{"kind", s.kind}, {"path", s.path}, {"labels", s.labels},
           {"has_labels", s.has_labels}, {"normalize", s.normalize}};
    j["sbm"] = {{"n", s.sbm.n}, {"alpha", s.sbm.alpha}, {"theta", s.sbm.theta},
                {"diag_mean", s.sbm.diag_mean}, {"diag_var", s.sbm.diag_var},
                {"off_mean", s.sbm.off_mean}, {"off_var", s.sbm.off_var}, {"seed", s.sbm.seed}};
    j["blobs"] = {{"n", s.blobs_n}, {"d", s.blobs_d}, {"alpha", s.blobs_alpha}, {"theta", s.blobs_theta},
                  {"std", s.blobs_std}, {"box", s.blobs_box}, {"seed", s.blobs_seed}};
    return j;
}

std::vector<double> grid_values(const json& j, const char* key, std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    if (j[key].is_number()) return {j[key].get<double>()};
    return j[key].get<std::vector<double>>();
}

std::string sparsify_to_string(const Sparsify& s) {
    switch (s.kind) {
    case Sparsify::Kind::kNone: return "none";
    case Sparsify::Kind::kKnn: return "knn:" + std::to_string(s.k);
    case Sparsify::Kind::kEps: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "eps:%.17g", s.eps);
        return buf;
    }
    }
    return "none";
}

void check_file(const InputSpec& s) {
    if ((s.kind == "edge-list" || s.kind == "csv") && !std::filesystem::exists(s.path))
        throw InvalidInput("input file '" + s.path + "' does not exist");
    if (!s.labels.empty() && !std::filesystem::exists(s.labels))
        throw InvalidInput("labels file '" + s.labels + "' does not exist");
}

} // namespace

Sparsify parse_sparsify(const std::string& text) {
    if (text.empty() || text == "none") return Sparsify::none();
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (colon == std::string::npos) throw InvalidInput("sparsify must be none, knn:K or eps:T");
    const std::string arg = text.substr(colon + 1);
    try {
        if (kind == "knn") return Sparsify::knn(static_cast<std::size_t>(std::stoul(arg)));
        if (kind == "eps") return Sparsify::eps_ball(std::stod(arg));
    } catch (const std::logic_error&) {
        throw InvalidInput("bad sparsify argument '" + text + "'");
    }
    throw InvalidInput("sparsify must be none, knn:K or eps:T");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    try {
        if (j.contains("input")) c.input = input_from_json(j["input"]);
        if (j.contains("validation") && !j["validation"].is_null()) c.validation = input_from_json(j["validation"]);
        c.split = j.value("split", c.split);
        c.objective = j.value("objective", c.objective);
        if (j.contains("rho") && j["rho"].is_number()) c.rho = j["rho"].get<double>();
        else if (j.contains("rho") && !(j["rho"].is_string() && j["rho"] == "auto") && !j["rho"].is_null())
            throw InvalidInput("rho must be a number or \"auto\"");
        c.sigma = j.value("sigma", c.sigma);
        c.sparsify = parse_sparsify(j.value("sparsify", std::string("none")));
        c.isolated = j.value("isolated", c.isolated);
        if (j.contains("grid")) {
            const json& g = j["grid"];
            c.lambdas = grid_values(g, "lambda", c.lambdas);
            c.alphas = grid_values(g, "alpha", c.alphas);
            c.thetas = grid_values(g, "theta", c.thetas);
        }
        if (j.contains("solver")) {
            const json& s = j["solver"];
            c.max_sweeps = s.value("max_sweeps", c.max_sweeps);
            const std::string order = s.value("order", std::string("fixed"));
            if (order == "fixed") c.order = VisitOrder::kFixed;
            else if (order == "shuffled") c.order = VisitOrder::kShuffled;
            else throw InvalidInput("solver.order must be fixed or shuffled");
            c.restarts = s.value("restarts", c.restarts);
        }
        c.baseline = j.value("baseline", c.baseline);
        c.baseline_k = j.value("baseline_k", c.baseline_k);
        c.output = j.value("output", c.output.string());
        c.seed = j.value("seed", c.seed);
        c.threads = j.value("threads", c.threads);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad experiment config: ") + e.what());
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["input"] = input_to_json(input);
    j["validation"] = validation ? input_to_json(*validation) : json(nullptr);
    j["split"] = split;
    j["objective"] = objective;
    j["rho"] = rho ? json(*rho) : json("auto");
    j["sigma"] = sigma;
    j["sparsify"] = sparsify_to_string(sparsify);
    j["isolated"] = isolated;
    j["grid"] = {{"lambda", lambdas}, {"alpha", alphas}, {"theta", thetas}};
    j["solver"] = {{"max_sweeps", max_sweeps},
                   {"order", order == VisitOrder::kFixed ? "fixed" : "shuffled"},
                   {"restarts", restarts}};
    j["baseline"] = baseline;
    j["baseline_k"] = baseline_k;
    j["output"] = output.string();
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

void ExperimentConfig::validate() const {
    if (lambdas.empty() || alphas.empty() || thetas.empty()) throw InvalidInput("parameter grids must be nonempty");
    for (double a : alphas)
        for (double t : thetas)
            for (double l : lambdas) PYParams{a, t, l}.validate();
    if (!(split >= 0.0 && split < 1.0)) throw InvalidInput("split must lie in [0, 1)");
    if (validation && split > 0.0) throw InvalidInput("give either a validation input or a split, not both");
    if (objective != "vectors") parse_cut_kind(objective);
    if (isolated != "error" && isolated != "self-loop") throw InvalidInput("isolated must be error or self-loop");
    if (baseline != "auto" && baseline != "kkm" && baseline != "kmeans" && baseline != "none")
        throw InvalidInput("baseline must be auto, kkm, kmeans or none");
    if (baseline == "kmeans" && objective != "vectors") throw InvalidInput("kmeans baseline needs objective vectors");
    if (baseline == "kkm" && objective == "vectors") throw InvalidInput("kkm baseline needs a graph objective");
    if (sigma < 0.0) throw InvalidInput("sigma must be nonnegative");
    if (max_sweeps < 1 || restarts < 1) throw InvalidInput("max_sweeps and restarts must be at least 1");
    check_file(input);
    if (validation) check_file(*validation);
}

// ---------------------------------------------------------------- running

namespace {

// Data ready for the solver: either vector geometry or a kernel built from a graph.
struct Prepared {
    Dataset data;
    std::optional<WeightedGraph> graph;
    std::optional<KernelProblem> kernel;
    CutKind kind = CutKind::kNormalizedCut;
    double sigma = 0.0;
    std::size_t isolated_nodes = 0;
};

Prepared prepare(Dataset data, const ExperimentConfig& cfg) {
    Prepared p;
    if (cfg.objective == "vectors") {
        if (!data.vectors) throw InvalidInput("objective vectors needs vector input");
        p.data = std::move(data);
        return p;
    }
    p.kind = parse_cut_kind(cfg.objective);
    WeightedGraph g;
    if (data.graph) {
        g = *data.graph;
    } else {
        p.sigma = cfg.sigma > 0.0 ? cfg.sigma : median_pairwise_distance(*data.vectors);
        g = gaussian_similarity_graph(*data.vectors, p.sigma, cfg.sparsify);
    }
    p.isolated_nodes = g.isolated_count();
    if (cfg.isolated == "self-loop" && p.isolated_nodes > 0) g = g.with_isolated_self_loops();
    p.kernel = build_kernel(g, p.kind, cfg.rho);
    p.graph = std::move(g);
    p.data = std::move(data);
    return p;
}

SolverConfig solver_config(const ExperimentConfig& cfg, const PYParams& params) {
    SolverConfig s;
    s.params = params;
    s.max_sweeps = cfg.max_sweeps;
    s.order = cfg.order;
    s.restarts = cfg.restarts;
    s.seed = cfg.seed;
    return s;
}

RunResult solve(const Prepared& prep, const SolverConfig& sc) {
    if (prep.kernel) {
        KernelGeometry geom(*prep.kernel);
        const WeightedGraph& g = *prep.graph;
        const CutKind kind = prep.kind;
        return run(geom, sc, [&g, kind](const Partition& p) { return cut_objective(g, p, kind); });
    }
    VectorGeometry geom(*prep.data.vectors);
    return run(geom, sc);
}

std::string describe(const CellResult& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "cell %zu (lambda=%.17g, alpha=%.17g, theta=%.17g)", c.index, c.params.lambda,
                  c.params.alpha, c.params.theta);
    return buf;
}

json cell_json(const CellResult& c) {
    return {{"index", c.index},
            {"lambda", c.params.lambda},
            {"alpha", c.params.alpha},
            {"theta", c.params.theta},
            {"k", c.k},
            {"nmi", c.nmi ? json(*c.nmi) : json(nullptr)},
            {"objective", c.objective},
            {"sweeps", c.sweeps},
            {"converged", c.converged}};
}

} // namespace

std::size_t select_cell(const std::vector<CellResult>& cells, std::optional<std::size_t> k_true) {
    if (cells.empty()) throw InvalidInput("no cells to select from");
    if (!k_true) return 0;
    auto gap = [&](const CellResult& c) {
        return c.k > *k_true ? c.k - *k_true : *k_true - c.k;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const auto gi = gap(cells[i]);
        const auto gb = gap(cells[best]);
        if (gi < gb || (gi == gb && cells[i].nmi.value_or(0.0) > cells[best].nmi.value_or(0.0))) best = i;
    }
    return best;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    config.validate();
    Dataset full = load_input(config.input);
    Dataset validation_data;
    Dataset clustering_data;
    if (config.validation) {
        validation_data = load_input(*config.validation);
        clustering_data = std::move(full);
    } else if (config.split > 0.0) {
        std::vector<std::size_t> idx(full.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::mt19937_64 rng(config.seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        const auto cut = static_cast<std::size_t>(std::llround(config.split * static_cast<double>(idx.size())));
        if (cut == 0 || cut == idx.size()) throw InvalidInput("split leaves an empty side");
        std::vector<std::size_t> val(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut));
        std::vector<std::size_t> rest(idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end());
        std::sort(val.begin(), val.end());
        std::sort(rest.begin(), rest.end());
        validation_data = full.subset(val);
        clustering_data = full.subset(rest);
    } else {
        validation_data = full;
        clustering_data = std::move(full);
    }

    const Prepared val = prepare(std::move(validation_data), config);
    const Prepared main = prepare(std::move(clustering_data), config);

    std::vector<CellResult> cells;
    for (double l : config.lambdas)
        for (double a : config.alphas)
            for (double t : config.thetas) {
                CellResult c;
                c.index = cells.size();
                c.params = PYParams{a, t, l};
                cells.push_back(c);
            }

    const std::filesystem::path cell_dir = config.output / "cells";
    std::filesystem::create_directories(cell_dir);

    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::optional<CellError> first_error;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            CellResult& c = cells[i];
            try {
                const RunResult r = solve(val, solver_config(config, c.params));
                c.k = r.partition.k();
                c.objective = r.final_objective();
                c.sweeps = r.sweeps_used;
                c.converged = r.converged;
                if (val.data.truth) c.nmi = nmi(r.partition, *val.data.truth);
                char name[32];
                std::snprintf(name, sizeof name, "cell_%04zu.json", i);
                write_json_atomic(cell_dir / name, cell_json(c));
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mu);
                if (!first_error || first_error->cell() > i) first_error.emplace(i, describe(c) + ": " + e.what());
            }
        }
    };
    std::size_t nthreads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, cells.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) throw *first_error;

    std::optional<std::size_t> val_k;
    if (val.data.truth) val_k = val.data.truth->k();
    const std::size_t chosen = select_cell(cells, val_k);

    ExperimentOutcome out;
    const RunResult ours = solve(main, solver_config(config, cells[chosen].params));
    json result;
    result["schema_version"] = kResultSchemaVersion;
    result["timestamp"] = utc_timestamp();
    result["config"] = config.to_json();
    result["conventions"] = conventions_json();
    json selection;
    selection["rule"] = conventions_json()["validation_rule"];
    selection["validation_k_true"] = val_k ? json(*val_k) : json(nullptr);
    selection["selected"] = cell_json(cells[chosen]);
    selection["cells"] = json::array();
    for (const auto& c : cells) selection["cells"].push_back(cell_json(c));
    result["selection"] = selection;

    json ours_j = run_json(ours);
    ours_j["lambda"] = cells[chosen].params.lambda;
    ours_j["alpha"] = cells[chosen].params.alpha;
    ours_j["theta"] = cells[chosen].params.theta;
    ours_j["rho"] = main.kernel ? json(main.kernel->rho) : json(nullptr);
    ours_j["isolated_nodes"] = main.isolated_nodes;
    if (main.sigma > 0.0) ours_j["sigma"] = main.sigma;
    ours_j["nmi"] = main.data.truth ? json(nmi(ours.partition, *main.data.truth)) : json(nullptr);
    result["ours"] = ours_j;
    if (main.data.truth) result["k_true"] = main.data.truth->k();

    std::string baseline = config.baseline;
    if (baseline == "auto") baseline = config.objective == "vectors" ? "kmeans" : "kkm";
    if (baseline != "none") {
        std::size_t k = config.baseline_k;
        if (k == 0) k = main.data.truth ? main.data.truth->k() : ours.partition.k();
        k = std::min(k, main.data.size());
        const RunResult base = baseline == "kkm"
                                   ? weighted_kernel_kmeans(*main.kernel, k, KMeansInit{config.seed}, config.max_sweeps)
                                   : kmeans(*main.data.vectors, k, KMeansInit{config.seed}, config.max_sweeps);
        json bj = run_json(base);
        bj["method"] = baseline;
        bj["nmi"] = main.data.truth ? json(nmi(base.partition, *main.data.truth)) : json(nullptr);
        result["baseline"] = bj;
    } else {
        result["baseline"] = nullptr;
    }

    write_json_atomic(config.output / "result.json", result);
    write_rank_size_tsv(config.output / "rank_size.tsv", size_histogram(ours.partition));
    out.result = std::move(result);
    out.cells = std::move(cells);
    out.selected = chosen;
    return out;
}

} // namespace plcut
