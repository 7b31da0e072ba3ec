#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bgossip {

// Undirected edge between 0-indexed nodes, always stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph. Nodes are 0-indexed in the C++ API; every textual
// form (edge lists, DOT, CLI, Python) uses 1-indexed labels.
class Graph {
public:
    Graph() = default;

    // Throws construction_error on self-loops, duplicates or out-of-range nodes.
    Graph(int n, std::vector<Edge> edges);

    int node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int node) const { return adjacency_.at(node); }
    int degree(int node) const { return static_cast<int>(adjacency_.at(node).size()); }
    bool has_edge(int a, int b) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

enum class ShapeTag { Line, Cycle, Star, TreeNonLine, GeneralBipartite, GeneralOddCycle };

struct GraphShape {
    ShapeTag tag = ShapeTag::GeneralBipartite;
    bool connected = false;
    bool has_odd_cycle = false;
};

std::string_view to_string(ShapeTag tag);

enum class GraphKind { Line, Cycle, Star, Complete, Regular };

// Parses "i j" lines (1-indexed). Blank lines and lines starting with '#' are
// skipped; an optional "n=<k>" header fixes the node count.
Graph parse_edge_list(std::string_view text);

// Inverse of parse_edge_list; always emits the "n=<k>" header.
std::string serialize_edge_list(const Graph& g);

std::string export_dot(const Graph& g);

// Star graphs have their center at node 0 (label 1). `degree` and `seed` are
// only consulted for Regular.
Graph make_graph(GraphKind kind, int n, int degree = 0, std::uint64_t seed = 0);

bool is_connected(const Graph& g);

// Returns the 2-coloring if the graph is bipartite.
std::optional<std::vector<int>> two_coloring(const Graph& g);

GraphShape classify_shape(const Graph& g);

// Throws precondition_error when g is disconnected or has fewer than 2 nodes.
void require_connected(const Graph& g, std::string_view what);

}  // namespace bgossip
