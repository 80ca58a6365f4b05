#include "plcut/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "plcut/errors.hpp"

namespace plcut {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "' for reading");
    return in;
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

bool parse_double(std::string_view tok, double& out) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, std::uint64_t& out) {
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

WeightedGraph parse_edge_list(std::istream& in) {
    std::vector<WeightedGraph::Edge> edges;
    std::uint64_t max_id = 0;
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t declared = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // "# nodes N" keeps trailing isolated nodes; any other comment is ignored.
        if (const auto head = split_ws(line); head.size() == 3 && head[0] == "#" && head[1] == "nodes") {
            std::uint64_t v = 0;
            if (parse_index(head[2], v)) declared = std::max(declared, v);
        }
        const auto toks = split_ws(strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() < 2 || toks.size() > 3)
            throw ParseError("expected 'u v [w]', got " + std::to_string(toks.size()) + " fields", lineno);
        std::uint64_t ids[2];
        for (int f = 0; f < 2; ++f) {
            if (!parse_index(toks[f], ids[f]))
                throw ParseError("node id '" + std::string(toks[f]) + "' is not a nonnegative integer", lineno,
                                 static_cast<std::size_t>(f + 1));
            if (ids[f] >= std::numeric_limits<std::uint32_t>::max())
                throw ParseError("node id too large", lineno, static_cast<std::size_t>(f + 1));
        }
        double w = 1.0;
        if (toks.size() == 3 && !parse_double(toks[2], w))
            throw ParseError("weight '" + std::string(toks[2]) + "' is not a finite number", lineno, 3);
        if (w < 0.0) throw InvalidInput("negative edge weight on line " + std::to_string(lineno));
        max_id = std::max({max_id, ids[0], ids[1]});
        edges.push_back({static_cast<std::uint32_t>(ids[0]), static_cast<std::uint32_t>(ids[1]), w});
    }
    if (edges.empty()) throw ParseError("edge list contains no edges", lineno == 0 ? 1 : lineno);
    if (declared >= std::numeric_limits<std::uint32_t>::max()) throw ParseError("declared node count too large", 1);
    return WeightedGraph::from_edges(static_cast<std::size_t>(std::max(max_id + 1, declared)), edges);
}

WeightedGraph load_edge_list(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_edge_list(in);
}

void save_edge_list(const std::filesystem::path& path, const WeightedGraph& g) {
    std::string text = "# nodes " + std::to_string(g.size()) + "\n";
    for (const auto& e : g.edges())
        text += std::to_string(e.u) + ' ' + std::to_string(e.v) + ' ' + fmt17(e.weight) + '\n';
    write_text_atomic(path, text);
}

CsvVectors parse_csv_vectors(std::istream& in, bool has_labels, bool normalize) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::size_t width = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string_view> cells;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            cells.push_back(trim(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (rows.empty()) {
            width = cells.size();
            if (width < (has_labels ? 2u : 1u)) throw ParseError("row has too few columns", lineno, 1);
        } else if (cells.size() != width) {
            throw ParseError("row has " + std::to_string(cells.size()) + " columns, expected " +
                                 std::to_string(width),
                             lineno, std::min(cells.size(), width) + 1);
        }
        const std::size_t nfeat = has_labels ? width - 1 : width;
        std::vector<double> row(nfeat);
        for (std::size_t c = 0; c < nfeat; ++c)
            if (!parse_double(cells[c], row[c]))
                throw ParseError("cell '" + std::string(cells[c]) + "' is not a finite number", lineno, c + 1);
        if (has_labels) {
            if (cells.back().empty()) throw ParseError("empty label", lineno, width);
            raw_labels.emplace_back(cells.back());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("CSV contains no rows", lineno == 0 ? 1 : lineno);

    const std::size_t nfeat = rows.front().size();
    RowMatrix pts(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(nfeat));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < nfeat; ++c)
            pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];

    CsvVectors out;
    out.data = VectorDataset(std::move(pts));
    if (normalize) normalize_min_max(out.data);
    if (has_labels) {
        std::unordered_map<std::string, std::int64_t> ids;
        std::vector<std::int64_t> labels;
        labels.reserve(raw_labels.size());
        for (const auto& s : raw_labels) {
            auto [it, fresh] = ids.emplace(s, static_cast<std::int64_t>(ids.size()));
            if (fresh) out.label_names.push_back(s);
            labels.push_back(it->second);
        }
        out.labels = Partition::from_assignments(std::span<const std::int64_t>(labels));
    }
    return out;
}

CsvVectors load_csv_vectors(const std::filesystem::path& path, bool has_labels, bool normalize) {
    auto in = open_in(path);
    return parse_csv_vectors(in, has_labels, normalize);
}

void save_csv_vectors(const std::filesystem::path& path, const VectorDataset& data, const Partition* labels) {
    if (labels && labels->n() != data.n()) throw InvalidInput("labels do not match the dataset");
    std::string text;
    for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
            if (j) text += ',';
            text += fmt17(data.points(i, j));
        }
        if (labels) text += ',' + std::to_string((*labels)[static_cast<std::size_t>(i)]);
        text += '\n';
    }
    write_text_atomic(path, text);
}

Partition load_labels(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::int64_t> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = trim(strip_comment(line));
        if (tok.empty()) continue;
        std::uint64_t v = 0;
        if (!parse_index(tok, v)) throw ParseError("label '" + std::string(tok) + "' is not a nonnegative integer", lineno, 1);
        labels.push_back(static_cast<std::int64_t>(v));
    }
    if (labels.empty()) throw ParseError("labels file is empty", lineno == 0 ? 1 : lineno);
    return Partition::from_assignments(std::span<const std::int64_t>(labels));
}

void save_labels(const std::filesystem::path& path, const Partition& p) {
    std::string text;
    for (auto c : p.assignments()) text += std::to_string(c) + '\n';
    write_text_atomic(path, text);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out.flush()) throw InvalidInput("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in '") + path.string() + "': " + e.what(), 0);
    }
}

void write_rank_size_tsv(const std::filesystem::path& path, const SizeHistogram& h) {
    std::string text = "rank\tsize\n";
    for (const auto& [rank, size] : h.rank_size) text += std::to_string(rank) + '\t' + std::to_string(size) + '\n';
    write_text_atomic(path, text);
}

nlohmann::json run_json(const RunResult& r) {
    nlohmann::json j;
    j["k"] = r.partition.k();
    j["n"] = r.partition.n();
    j["assignments"] = std::vector<ClusterId>(r.partition.assignments().begin(), r.partition.assignments().end());
    j["objective_trace"] = r.objective_trace;
    j["assignment_trace"] = r.assignment_trace;
    j["k_trace"] = r.k_trace;
    j["moves_trace"] = r.moves_trace;
    if (!r.probe_trace.empty()) j["cut_trace"] = r.probe_trace;
    j["final_objective"] = r.objective_trace.empty() ? 0.0 : r.final_objective();
    j["sweeps_used"] = r.sweeps_used;
    j["converged"] = r.converged;
    j["seed"] = r.seed;
    j["restart"] = r.restart;
    j["reseeds"] = r.reseeds;
    j["max_discrepancy"] = r.max_discrepancy;
    const auto h = size_histogram(r.partition);
    j["size_histogram"] = h.sizes;
    return j;
}

nlohmann::json conventions_json() {
    return {
        {"nmi_normalization", "sqrt"},
        {"log_base", "e"},
        {"regularizer", "-ln EPPF"},
        {"forbidden_move", "singleton to new cluster"},
        {"tie_break", "stay, then lowest id, new cluster last"},
        {"validation_rule", "min |k - k_true|, then higher validation NMI, then grid order"},
    };
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace plcut
