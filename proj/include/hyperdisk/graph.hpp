#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hyperdisk {

// Node-labeled graph with ordered edges (from, to). Undirected graphs store
// both orientations of every edge. Self-loops are never allowed.
struct Graph {
    std::vector<std::string> nodes;
    std::set<std::pair<int, int>> edges;
    bool directed = true;
};

enum class TreeMode { Undirected, DirectedClosure };

// Complete binary tree with 2^(depth+1) - 1 nodes labeled "0", "1", ... in
// level order (children of i are 2i+1 and 2i+2). Undirected mode stores each
// parent-child edge in both orientations; DirectedClosure stores an edge
// from every node to each of its ancestors and nothing else.
Graph complete_binary_tree(int depth, TreeMode mode);

// Reachability closure of a directed graph, excluding self-pairs. Input
// edges are kept.
Graph transitive_closure(const Graph& g);

// Parses UTF-8 lines "child<TAB>parent". Lines starting with '#' and blank
// lines are skipped. Node labels are registered in first-appearance order;
// duplicate edges collapse. The result is directed exactly as listed.
Graph load_edge_list(const std::string& path);

// load_edge_list, plus: a "# undirected" comment line marks the file as
// undirected, in which case the edge set is symmetrized.
Graph read_graph_file(const std::string& path);

// Inverse of the loaders. Directed graphs write one line per edge;
// undirected graphs write a "# undirected" header and each edge once.
void write_edge_list(const Graph& g, const std::string& path);

// Sorted neighbor lists over the symmetrized edge set.
std::vector<std::vector<int>> symmetrized_adjacency(const Graph& g);

// Breadth-first hop counts on the symmetrized edge set. Throws if the graph
// is disconnected, listing the components.
std::vector<std::vector<int>> graph_distance_matrix(const Graph& g);

// Out-neighbors N(u), sorted.
std::vector<int> out_neighbors(const Graph& g, int u);

// Non-neighbors N'(u) = V minus N(u) minus {u}, sorted.
std::vector<int> non_neighbors(const Graph& g, int u);

}  // namespace hyperdisk
