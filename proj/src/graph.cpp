#include "hyperdisk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hyperdisk/batch.hpp"

namespace hyperdisk {

Graph complete_binary_tree(int depth, TreeMode mode) {
    if (depth < 1) throw std::invalid_argument("tree depth must be at least 1");
    if (depth > 20) throw std::invalid_argument("tree depth above 20 refused by size guard");
    const int n = (1 << (depth + 1)) - 1;
    Graph g;
    g.nodes.reserve(n);
    for (int i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
    if (mode == TreeMode::Undirected) {
        g.directed = false;
        for (int i = 1; i < n; ++i) {
            const int parent = (i - 1) / 2;
            g.edges.emplace(i, parent);
            g.edges.emplace(parent, i);
        }
    } else {
        g.directed = true;
        for (int i = 1; i < n; ++i) {
            for (int a = (i - 1) / 2;; a = (a - 1) / 2) {
                g.edges.emplace(i, a);
                if (a == 0) break;
            }
        }
    }
    return g;
}

Graph transitive_closure(const Graph& g) {
    if (!g.directed) throw std::invalid_argument("transitive closure requires a directed graph");
    const int n = static_cast<int>(g.nodes.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : g.edges) adj[u].push_back(v);

    Graph out;
    out.nodes = g.nodes;
    out.directed = true;
    std::vector<char> seen(n);
    for (int s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        for (int v = 0; v < n; ++v)
            if (seen[v] && v != s) out.edges.emplace(s, v);
    }
    return out;
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    Graph g;
    g.directed = true;
    std::map<std::string, int> index;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, static_cast<int>(g.nodes.size()));
        if (inserted) g.nodes.push_back(label);
        return it->second;
    };

    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line[0] == '#') continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() || line.find('\t', tab + 1) != std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineNo) + ": malformed line, expected child<TAB>parent");
        }
        const std::string child = line.substr(0, tab);
        const std::string parent = line.substr(tab + 1);
        if (child == parent) throw std::runtime_error(path + ":" + std::to_string(lineNo) + ": self-loop not allowed");
        // Interned as separate statements: labels must register in the order
        // they appear on the line, which unsequenced call arguments don't
        // guarantee.
        const int childId = intern(child);
        const int parentId = intern(parent);
        g.edges.emplace(childId, parentId);
    }
    if (g.edges.empty()) throw std::runtime_error("edge list is empty: " + path);
    return g;
}

Graph read_graph_file(const std::string& path) {
    bool undirectedFlag = false;
    {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open edge list: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line == "# undirected") {
                undirectedFlag = true;
                break;
            }
        }
    }
    Graph g = load_edge_list(path);
    if (undirectedFlag) {
        std::set<std::pair<int, int>> sym = g.edges;
        for (const auto& [u, v] : g.edges) sym.emplace(v, u);
        g.edges = std::move(sym);
        g.directed = false;
    }
    return g;
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    if (g.directed) {
        for (const auto& [u, v] : g.edges) out << g.nodes[u] << '\t' << g.nodes[v] << '\n';
    } else {
        out << "# undirected\n";
        for (const auto& [u, v] : g.edges)
            if (u > v) out << g.nodes[u] << '\t' << g.nodes[v] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::vector<int>> symmetrized_adjacency(const Graph& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<std::set<int>> sets(n);
    for (const auto& [u, v] : g.edges) {
        sets[u].insert(v);
        sets[v].insert(u);
    }
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) adj[i].assign(sets[i].begin(), sets[i].end());
    return adj;
}

std::vector<std::vector<int>> graph_distance_matrix(const Graph& g) {
    const auto adj = symmetrized_adjacency(g);
    const int n = static_cast<int>(adj.size());
    if (n == 0) throw std::invalid_argument("graph has no nodes");

    std::vector<int> component(n, -1);
    int componentCount = 0;
    for (int s = 0; s < n; ++s) {
        if (component[s] != -1) continue;
        const int id = componentCount++;
        std::queue<int> q;
        q.push(s);
        component[s] = id;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (component[v] == -1) {
                    component[v] = id;
                    q.push(v);
                }
        }
    }
    if (componentCount > 1) {
        std::ostringstream msg;
        msg << "graph is disconnected into " << componentCount << " components:";
        for (int id = 0; id < componentCount; ++id) {
            msg << " {";
            bool first = true;
            int listed = 0;
            for (int v = 0; v < n; ++v) {
                if (component[v] != id) continue;
                if (listed++ == 8) {
                    msg << ", ...";
                    break;
                }
                msg << (first ? "" : ", ") << g.nodes[v];
                first = false;
            }
            msg << "}";
        }
        throw std::invalid_argument(msg.str());
    }
    return batch::hop_matrix(adj);
}

std::vector<int> out_neighbors(const Graph& g, int u) {
    if (u < 0 || u >= static_cast<int>(g.nodes.size())) throw std::out_of_range("node index");
    std::vector<int> out;
    for (auto it = g.edges.lower_bound({u, -1}); it != g.edges.end() && it->first == u; ++it) out.push_back(it->second);
    return out;
}

std::vector<int> non_neighbors(const Graph& g, int u) {
    const std::vector<int> nbrs = out_neighbors(g, u);
    std::vector<int> out;
    out.reserve(g.nodes.size());
    size_t k = 0;
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
        while (k < nbrs.size() && nbrs[k] < v) ++k;
        if (v == u || (k < nbrs.size() && nbrs[k] == v)) continue;
        out.push_back(v);
    }
    return out;
}

}  // namespace hyperdisk
