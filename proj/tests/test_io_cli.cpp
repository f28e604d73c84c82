#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "hyperdisk/cli_app.hpp"
#include "hyperdisk/graph.hpp"
#include "hyperdisk/io.hpp"

using namespace hyperdisk;

namespace {

// Self-deleting scratch directory under the system temp directory.
struct TempDir {
    explicit TempDir(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return path + "/" + name; }
    std::string path;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hyperdisk");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (std::string& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("decimal formatting round-trips doubles exactly") {
    // strtod rather than stod: stod throws on the subnormal because the
    // correctly rounded result still carries ERANGE.
    for (double x : {1.0 / 3.0, 0.1, -2.5, 1e300, 5e-324, 0.0, 12345.6789, -1.0000000000000002}) {
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV writing emits the header and rejects ragged rows") {
    TempDir dir("hyperdisk_test_csv");
    const std::string path = dir.file("t.csv");
    write_csv(path, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(slurp(path) == "a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{"1"}}), std::runtime_error);
    CHECK_THROWS_AS(write_csv("/nonexistent-dir/t.csv", {"a"}, {}), std::runtime_error);
}

TEST_CASE("JSON files are byte-stable regardless of key insertion order") {
    TempDir dir("hyperdisk_test_json");
    nlohmann::json a;
    a["zeta"] = 1;
    a["alpha"] = 2.5;
    nlohmann::json b;
    b["alpha"] = 2.5;
    b["zeta"] = 1;
    write_json_file(dir.file("a.json"), a);
    write_json_file(dir.file("b.json"), b);
    const std::string sa = slurp(dir.file("a.json"));
    CHECK(sa == slurp(dir.file("b.json")));
    CHECK(sa.back() == '\n');
    CHECK(sa.find("  \"alpha\"") != std::string::npos);  // two-space indentation
}

TEST_CASE("embedding TSV round-trips labels and coordinates exactly") {
    TempDir dir("hyperdisk_test_tsv");
    const std::string path = dir.file("e.tsv");
    const std::vector<std::string> labels{"root", "left leaf", "right"};
    const std::vector<Vec> coords{{0.1, -0.25}, {1.0 / 3.0, 1e-12}, {-0.9999999, 0.5}};
    write_embedding_tsv(path, labels, coords);
    const auto rows = read_embedding_tsv(path);
    REQUIRE(rows.size() == 3);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].first == labels[i]);
        CHECK(rows[i].second == coords[i]);  // bit-exact through the decimal form
    }
    CHECK_THROWS_AS(write_embedding_tsv(path, {"x"}, {}), std::runtime_error);
}

TEST_CASE("embedding TSV reading rejects broken files") {
    CHECK_THROWS_AS(read_embedding_tsv("/nonexistent/e.tsv"), std::runtime_error);

    TempDir dir("hyperdisk_test_tsv_bad");
    const std::string ragged = dir.file("ragged.tsv");
    {
        std::ofstream out(ragged);
        out << "a\t0.1\t0.2\nb\t0.3\n";
    }
    CHECK_THROWS_AS(read_embedding_tsv(ragged), std::runtime_error);

    const std::string junk = dir.file("junk.tsv");
    {
        std::ofstream out(junk);
        out << "a\t0.1x\n";
    }
    CHECK_THROWS_AS(read_embedding_tsv(junk), std::runtime_error);

    const std::string empty = dir.file("empty.tsv");
    {
        std::ofstream out(empty);
        out << "# only a comment\n";
    }
    CHECK_THROWS_AS(read_embedding_tsv(empty), std::runtime_error);
}

TEST_CASE("command line generates graphs that read back faithfully") {
    TempDir dir("hyperdisk_test_cli_gen");
    const std::string path = dir.file("tree.tsv");
    CHECK(cli({"gen-graph", "--depth", "3", "--mode", "undirected", "--out", path}) == 0);
    const Graph g = read_graph_file(path);
    CHECK_FALSE(g.directed);
    CHECK(g.nodes.size() == 15);
    CHECK(g.edges.size() == 28);

    const std::string closure = dir.file("closure.tsv");
    CHECK(cli({"gen-graph", "--depth", "5", "--mode", "closure", "--out", closure}) == 0);
    const Graph c = read_graph_file(closure);
    CHECK(c.directed);
    CHECK(c.nodes.size() == 63);
    CHECK(c.edges.size() == 258);
}

TEST_CASE("command line self-test passes on a small sample budget") {
    CHECK(cli({"expmap-selftest", "--samples", "2000", "--seed", "1"}) == 0);
}

TEST_CASE("command line embeds, evaluates, and reports through files") {
    TempDir dir("hyperdisk_test_cli_embed");
    const std::string graph = dir.file("tree.tsv");
    REQUIRE(cli({"gen-graph", "--depth", "2", "--out", graph}) == 0);

    const std::string prefix = dir.file("emb");
    CHECK(cli({"embed", "--graph", graph, "--dim", "2", "--lr", "0.05", "--steps", "60",
               "--full-loss-every", "20", "--seed", "5", "--out", prefix}) == 0);
    CHECK(std::filesystem::exists(prefix + ".tsv"));
    CHECK(std::filesystem::exists(prefix + ".trace.csv"));
    CHECK(std::filesystem::exists(prefix + ".eval.json"));

    const nlohmann::json eval = nlohmann::json::parse(slurp(prefix + ".eval.json"));
    CHECK(eval.at("failed").get<bool>() == false);
    CHECK(eval.at("steps_completed").get<int>() == 60);
    CHECK(eval.contains("tau"));

    const auto rows = read_embedding_tsv(prefix + ".tsv");
    CHECK(rows.size() == 7);

    const std::string scored = dir.file("scored.json");
    CHECK(cli({"eval", "--embedding", prefix + ".tsv", "--graph", graph, "--out", scored}) == 0);
    const nlohmann::json rescored = nlohmann::json::parse(slurp(scored));
    CHECK(rescored.at("nodes").get<int>() == 7);
    CHECK(rescored.at("dim").get<int>() == 2);
    CHECK(rescored.at("tau").get<double>() == eval.at("tau").get<double>());
    CHECK(rescored.at("full_loss").get<double>() == eval.at("full_loss").get<double>());
}

TEST_CASE("command line runs the two-anchor experiment into a directory") {
    TempDir dir("hyperdisk_test_cli_bary");
    const std::string outdir = dir.file("out");
    CHECK(cli({"barycenter", "--rates", "0.01", "--iters", "300", "--seed", "1",
               "--outdir", outdir}) == 0);
    const nlohmann::json summary = nlohmann::json::parse(slurp(outdir + "/summary.json"));
    CHECK(summary.at("epsilon").get<double>() == 1e-8);
    CHECK(summary.at("iters").get<int>() == 300);
    CHECK(summary.contains("cell_geodesic_0.01_mean_offset"));
    CHECK(summary.contains("bias_0.01_nat_outward"));
    CHECK(std::filesystem::exists(outdir + "/loss_geodesic_0.01.csv"));
    CHECK(std::filesystem::exists(outdir + "/offsets_natural_0.01.csv"));
    CHECK(std::filesystem::exists(outdir + "/loss_euclidean_0.01.csv"));
}

TEST_CASE("command line maps usage errors to 1 and runtime errors to 2") {
    CHECK(cli({"no-such-command"}) == 1);
    CHECK(cli({"embed"}) == 1);                            // missing required options
    CHECK(cli({"embed", "--graph", "/nonexistent.tsv", "--out", "/tmp/x"}) == 1);  // existence check
    CHECK(cli({"gen-graph", "--depth", "99", "--out", "/tmp/x.tsv"}) == 1);        // range check
    CHECK(cli({"gen-graph", "--depth", "2", "--out", "/nonexistent-dir/x.tsv"}) == 2);
    CHECK(cli({}) == 1);  // a subcommand is required
}
