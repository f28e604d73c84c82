#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyperdisk/graph.hpp"

using namespace hyperdisk;

namespace {

// Self-deleting scratch file under the system temp directory.
struct TempFile {
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("complete binary trees have level-order labels and symmetric edges") {
    const Graph g = complete_binary_tree(1, TreeMode::Undirected);
    CHECK(g.nodes == std::vector<std::string>{"0", "1", "2"});
    CHECK_FALSE(g.directed);
    CHECK(g.edges.size() == 4);  // both orientations of 2 parent-child pairs
    CHECK(g.edges.count({0, 1}) == 1);
    CHECK(g.edges.count({1, 0}) == 1);
    CHECK(g.edges.count({0, 2}) == 1);
    CHECK(g.edges.count({2, 0}) == 1);

    const Graph d2 = complete_binary_tree(2, TreeMode::Undirected);
    CHECK(d2.nodes.size() == 7);
    CHECK(d2.edges.size() == 12);
}

TEST_CASE("tree depth outside [1, 20] is refused") {
    CHECK_THROWS_AS(complete_binary_tree(0, TreeMode::Undirected), std::invalid_argument);
    CHECK_THROWS_AS(complete_binary_tree(-3, TreeMode::Undirected), std::invalid_argument);
    CHECK_THROWS_AS(complete_binary_tree(21, TreeMode::DirectedClosure), std::invalid_argument);
}

TEST_CASE("directed ancestor closure of the depth-5 tree has 63 nodes and 258 edges") {
    const Graph g = complete_binary_tree(5, TreeMode::DirectedClosure);
    CHECK(g.directed);
    CHECK(g.nodes.size() == 63);
    CHECK(g.edges.size() == 258);
    // Spot checks: node 4's ancestors are 1 and 0; the root has none.
    CHECK(g.edges.count({4, 1}) == 1);
    CHECK(g.edges.count({4, 0}) == 1);
    CHECK(g.edges.count({4, 2}) == 0);
    CHECK(out_neighbors(g, 0).empty());
}

TEST_CASE("transitive closure adds reachability pairs and keeps inputs") {
    Graph chain;
    chain.nodes = {"a", "b", "c"};
    chain.edges = {{0, 1}, {1, 2}};
    chain.directed = true;
    const Graph tc = transitive_closure(chain);
    CHECK(tc.edges.size() == 3);
    CHECK(tc.edges.count({0, 1}) == 1);
    CHECK(tc.edges.count({1, 2}) == 1);
    CHECK(tc.edges.count({0, 2}) == 1);

    Graph und;
    und.nodes = {"a", "b"};
    und.edges = {{0, 1}, {1, 0}};
    und.directed = false;
    CHECK_THROWS_AS(transitive_closure(und), std::invalid_argument);
}

TEST_CASE("edge lists parse with first-appearance interning and deduplication") {
    TempFile f("hyperdisk_test_edges.tsv");
    {
        std::ofstream out(f.path);
        out << "# a comment\n";
        out << "\n";
        out << "b\ta\n";
        out << "c\ta\n";
        out << "b\ta\n";  // duplicate collapses
    }
    const Graph g = load_edge_list(f.path);
    CHECK(g.directed);
    CHECK(g.nodes == std::vector<std::string>{"b", "a", "c"});
    CHECK(g.edges.size() == 2);
    CHECK(g.edges.count({0, 1}) == 1);
    CHECK(g.edges.count({2, 1}) == 1);
}

TEST_CASE("malformed, self-loop, empty, and missing edge lists are rejected") {
    CHECK_THROWS_AS(load_edge_list("/nonexistent/edges.tsv"), std::runtime_error);

    TempFile bad("hyperdisk_test_bad.tsv");
    {
        std::ofstream out(bad.path);
        out << "a b\n";  // no tab
    }
    CHECK_THROWS_AS(load_edge_list(bad.path), std::runtime_error);

    TempFile loop("hyperdisk_test_loop.tsv");
    {
        std::ofstream out(loop.path);
        out << "a\ta\n";
    }
    CHECK_THROWS_AS(load_edge_list(loop.path), std::runtime_error);

    TempFile empty("hyperdisk_test_empty.tsv");
    {
        std::ofstream out(empty.path);
        out << "# nothing here\n";
    }
    CHECK_THROWS_AS(load_edge_list(empty.path), std::runtime_error);
}

TEST_CASE("directed graphs round-trip through write and load") {
    const Graph g = complete_binary_tree(3, TreeMode::DirectedClosure);
    TempFile f("hyperdisk_test_rt_directed.tsv");
    write_edge_list(g, f.path);
    const Graph back = load_edge_list(f.path);
    CHECK(back.directed);
    CHECK(back.nodes.size() == g.nodes.size());
    CHECK(back.edges.size() == g.edges.size());
    // Interning order may differ from level order; compare by label.
    for (const auto& [u, v] : back.edges) {
        const int lu = std::stoi(back.nodes[u]);
        const int lv = std::stoi(back.nodes[v]);
        CHECK(g.edges.count({lu, lv}) == 1);
    }
}

TEST_CASE("undirected graphs round-trip through the header-marked format") {
    const Graph g = complete_binary_tree(2, TreeMode::Undirected);
    TempFile f("hyperdisk_test_rt_undirected.tsv");
    write_edge_list(g, f.path);
    {
        std::ifstream in(f.path);
        std::string first;
        std::getline(in, first);
        CHECK(first == "# undirected");
    }
    const Graph back = read_graph_file(f.path);
    CHECK_FALSE(back.directed);
    CHECK(back.nodes.size() == g.nodes.size());
    CHECK(back.edges.size() == g.edges.size());
    for (const auto& [u, v] : back.edges) {
        const int lu = std::stoi(back.nodes[u]);
        const int lv = std::stoi(back.nodes[v]);
        CHECK(g.edges.count({lu, lv}) == 1);
    }
}

TEST_CASE("hop-count matrix matches hand counts on the depth-2 tree") {
    const Graph g = complete_binary_tree(2, TreeMode::Undirected);
    const auto dist = graph_distance_matrix(g);
    REQUIRE(dist.size() == 7);
    for (int u = 0; u < 7; ++u) CHECK(dist[u][u] == 0);
    CHECK(dist[0][1] == 1);
    CHECK(dist[1][3] == 1);
    CHECK(dist[3][4] == 2);   // siblings
    CHECK(dist[3][0] == 2);   // leaf to root
    CHECK(dist[3][6] == 4);   // leaf to opposite leaf
    CHECK(dist[3][6] == dist[6][3]);
}

TEST_CASE("hop counts refuse disconnected graphs") {
    Graph g;
    g.nodes = {"a", "b", "c", "d"};
    g.edges = {{0, 1}};
    g.directed = true;
    CHECK_THROWS_AS(graph_distance_matrix(g), std::invalid_argument);
}

TEST_CASE("neighbor queries split the vertex set") {
    const Graph g = complete_binary_tree(2, TreeMode::DirectedClosure);
    CHECK(out_neighbors(g, 3) == std::vector<int>{0, 1});
    const std::vector<int> non = non_neighbors(g, 3);
    CHECK(non == std::vector<int>{2, 4, 5, 6});
    CHECK_THROWS_AS(out_neighbors(g, -1), std::out_of_range);
    CHECK_THROWS_AS(out_neighbors(g, 7), std::out_of_range);
}
