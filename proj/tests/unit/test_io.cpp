#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "plcut/errors.hpp"
#include "plcut/io.hpp"

using namespace plcut;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("plcut_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

WeightedGraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

CsvVectors parse_csv(const std::string& text, bool labels, bool normalize = false) {
    std::istringstream in(text);
    return parse_csv_vectors(in, labels, normalize);
}

} // namespace

TEST(EdgeList, SingleWeightedEdge) {
    const auto g = parse("0 1 2.5\n");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.weight(0, 1), 2.5);
    EXPECT_EQ(g.weight(1, 0), 2.5);
}

TEST(EdgeList, DuplicatesKeepMax) {
    const auto g = parse("# comment\n0 1 1\n1 0 3   # trailing\n\n2 1\n");
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.weight(0, 1), 3.0);
    EXPECT_EQ(g.weight(1, 2), 1.0);
}

TEST(EdgeList, NodeCountHeader) {
    EXPECT_EQ(parse("# nodes 5\n0 1\n").size(), 5u);
    EXPECT_EQ(parse("# nodes 1\n0 3\n").size(), 4u);
    EXPECT_EQ(parse("# nodes: many\n0 1\n").size(), 2u);
}

TEST(EdgeList, Errors) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("# only comments\n"), ParseError);
    EXPECT_THROW(parse("0 1 -1\n"), InvalidInput);
    EXPECT_THROW(parse("0\n"), ParseError);
    EXPECT_THROW(parse("0 1 2 3\n"), ParseError);
    try {
        parse("0 1\n1 x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(EdgeList, RoundTripIsExact) {
    TempDir tmp;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    std::vector<WeightedGraph::Edge> edges;
    for (std::uint32_t i = 0; i < 30; ++i) edges.push_back({i, (i * 7 + 3) % 31, w(rng)});
    const auto g = WeightedGraph::from_edges(32, edges);
    save_edge_list(tmp.path / "g.txt", g);
    const auto back = load_edge_list(tmp.path / "g.txt");
    EXPECT_EQ(back.size(), 32u);
    EXPECT_TRUE(back.adjacency().to_dense() == g.adjacency().to_dense());
}

TEST(Csv, WithLabels) {
    const auto c = parse_csv("1,2,a\n3,4,b\n5,6,a\n", true);
    EXPECT_EQ(c.data.n(), 3u);
    EXPECT_EQ(c.data.dim(), 2u);
    ASSERT_TRUE(c.labels);
    EXPECT_EQ(c.labels->k(), 2u);
    EXPECT_EQ((*c.labels)[0], (*c.labels)[2]);
    EXPECT_EQ(c.data.points(2, 1), 6.0);
}

TEST(Csv, NormalizeConstantColumn) {
    const auto c = parse_csv("1,7\n3,7\n2,7\n", false, true);
    EXPECT_EQ(c.data.points(0, 0), 0.0);
    EXPECT_EQ(c.data.points(1, 0), 1.0);
    EXPECT_EQ(c.data.points(2, 0), 0.5);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(c.data.points(i, 1), 0.0);
}

TEST(Csv, Errors) {
    EXPECT_THROW(parse_csv("1,2\n3\n", false), ParseError);
    try {
        parse_csv("1,2\n3,zz\n", false);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 2u);
    }
}

TEST(Csv, RoundTrip) {
    TempDir tmp;
    RowMatrix x(3, 2);
    x << 0.1, 1.0 / 3.0, -2e-300, 5, 7, 8;
    const auto labels = Partition::from_assignments(std::span<const std::int64_t>(std::vector<std::int64_t>{0, 1, 0}));
    save_csv_vectors(tmp.path / "v.csv", VectorDataset(x), &labels);
    const auto c = load_csv_vectors(tmp.path / "v.csv", true);
    EXPECT_TRUE(c.data.points == x);
    EXPECT_EQ(*c.labels, labels);
}

TEST(Labels, RoundTrip) {
    TempDir tmp;
    const auto p = Partition::from_assignments(std::span<const std::int64_t>(std::vector<std::int64_t>{2, 2, 0, 1}));
    save_labels(tmp.path / "l.txt", p);
    EXPECT_EQ(load_labels(tmp.path / "l.txt"), p);
}

TEST(Json, AtomicWriteAndRunFields) {
    TempDir tmp;
    RunResult r;
    r.partition = Partition::single_cluster(3);
    r.objective_trace = {2.0, 1.0};
    r.assignment_trace = {1.5, 1.0};
    r.k_trace = {1, 1};
    r.moves_trace = {0, 0};
    const auto j = run_json(r);
    EXPECT_EQ(j["k"], 1);
    EXPECT_EQ(j["assignments"].size(), 3u);
    EXPECT_EQ(j["final_objective"], 1.0);
    write_json_atomic(tmp.path / "r.json", j);
    EXPECT_EQ(read_json(tmp.path / "r.json"), j);
    EXPECT_FALSE(fs::exists(tmp.path / "r.json.tmp"));
    EXPECT_EQ(conventions_json()["nmi_normalization"], "sqrt");
}

TEST(Tsv, RankSize) {
    TempDir tmp;
    const auto p = Partition::from_assignments(std::span<const std::int64_t>(std::vector<std::int64_t>{0, 0, 1}));
    write_rank_size_tsv(tmp.path / "rs.tsv", size_histogram(p));
    std::ifstream in(tmp.path / "rs.tsv");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "rank\tsize\n1\t2\n2\t1\n");
}
