#include "bgossip/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_set>

#include "bgossip/errors.hpp"

namespace bgossip {

namespace {

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_positive(std::string_view token, long long& out) {
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end && out > 0;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adjacency_(n < 0 ? 0 : n) {
    if (n < 1) throw construction_error("graph needs at least one node");
    std::unordered_set<std::uint64_t> seen;
    edges_.reserve(edges.size());
    for (auto e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw construction_error("edge endpoint out of range");
        if (e.u == e.v) throw construction_error("self-loop on node " + std::to_string(e.u + 1));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.insert(edge_key(e.u, e.v)).second)
            throw construction_error("duplicate edge {" + std::to_string(e.u + 1) + "," +
                                     std::to_string(e.v + 1) + "}");
        edges_.push_back(e);
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int a, int b) const {
    if (a < 0 || a >= n_) return false;
    const auto& nbrs = adjacency_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::string_view to_string(ShapeTag tag) {
    switch (tag) {
        case ShapeTag::Line: return "line";
        case ShapeTag::Cycle: return "cycle";
        case ShapeTag::Star: return "star";
        case ShapeTag::TreeNonLine: return "tree";
        case ShapeTag::GeneralBipartite: return "bipartite";
        case ShapeTag::GeneralOddCycle: return "odd-cycle";
    }
    return "?";
}

Graph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    long long header_n = 0;
    long long max_label = 0;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        auto fail = [&](const std::string& why) {
            return parse_error("line " + std::to_string(line_no) + ": " + why);
        };
        if (line.rfind("n=", 0) == 0) {
            if (!parse_positive(trim(line.substr(2)), header_n)) throw fail("bad node-count header");
            continue;
        }
        auto tokens = split_ws(line);
        if (tokens.size() != 2) throw fail("expected two node labels");
        long long a = 0, b = 0;
        if (!parse_positive(tokens[0], a) || !parse_positive(tokens[1], b))
            throw fail("node labels must be positive integers");
        if (a == b) throw fail("self-loop on node " + std::to_string(a));
        if (a > (1 << 24) || b > (1 << 24)) throw fail("node label too large");
        if (!seen.insert(edge_key(static_cast<int>(a), static_cast<int>(b))).second)
            throw fail("duplicate edge {" + std::to_string(std::min(a, b)) + "," +
                       std::to_string(std::max(a, b)) + "}");
        max_label = std::max({max_label, a, b});
        edges.push_back({static_cast<int>(std::min(a, b)) - 1, static_cast<int>(std::max(a, b)) - 1});
    }
    if (header_n > 0 && header_n < max_label)
        throw parse_error("header n=" + std::to_string(header_n) + " smaller than label " +
                          std::to_string(max_label));
    const auto n = header_n > 0 ? header_n : max_label;
    if (n == 0) throw parse_error("empty edge list");
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n=" << g.node_count() << '\n';
    for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

std::string export_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (int i = 0; i < g.node_count(); ++i) out << "  " << i + 1 << ";\n";
    for (const auto& e : g.edges()) out << "  " << e.u + 1 << " -- " << e.v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

void shuffle_edges(std::vector<Edge>& edges, std::mt19937_64& rng) {
    std::unordered_set<std::uint64_t> present;
    for (const auto& e : edges) present.insert(edge_key(e.u, e.v));

    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::bernoulli_distribution flip(0.5);
    const std::size_t swaps = 10 * edges.size();
    for (std::size_t s = 0; s < swaps; ++s) {
        const auto i = pick(rng);
        const auto j = pick(rng);
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, e] = edges[j];
        if (flip(rng)) std::swap(c, e);
        // a-b, c-e  ->  a-c, b-e
        if (a == c || b == e || a == e || b == c) continue;
        if (present.count(edge_key(a, c)) || present.count(edge_key(b, e))) continue;
        present.erase(edge_key(a, b));
        present.erase(edge_key(c, e));
        present.insert(edge_key(a, c));
        present.insert(edge_key(b, e));
        edges[i] = {std::min(a, c), std::max(a, c)};
        edges[j] = {std::min(b, e), std::max(b, e)};
    }
    std::sort(edges.begin(), edges.end());
}

Graph make_regular(int n, int d, std::uint64_t seed) {
    if (d < 1 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
        throw construction_error("no simple " + std::to_string(d) + "-regular graph on " +
                                 std::to_string(n) + " nodes");
    // Circulant start, then degree-preserving double-edge swaps.
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int k = 1; k <= d / 2; ++k) {
            const int j = (i + k) % n;
            edges.push_back({std::min(i, j), std::max(i, j)});
        }
    }
    if (d % 2 == 1) {
        for (int i = 0; i < n / 2; ++i) edges.push_back({i, i + n / 2});
    }
    std::sort(edges.begin(), edges.end());
    const auto circulant = edges;
    std::mt19937_64 rng(seed);
    // Swaps can disconnect sparse graphs; retry a few times before giving up.
    for (int attempt = 0; attempt < 20; ++attempt) {
        edges = circulant;
        shuffle_edges(edges, rng);
        Graph g(n, edges);
        if (is_connected(g) || d == 1) return g;
    }
    return Graph(n, circulant);
}

}  // namespace

Graph make_graph(GraphKind kind, int n, int degree, std::uint64_t seed) {
    if (n < 2) throw construction_error("graph needs at least 2 nodes");
    std::vector<Edge> edges;
    switch (kind) {
        case GraphKind::Line:
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
            break;
        case GraphKind::Cycle:
            if (n < 3) throw construction_error("cycle needs at least 3 nodes");
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
            edges.push_back({0, n - 1});
            break;
        case GraphKind::Star:
            if (n < 3) throw construction_error("star needs at least 3 nodes");
            for (int i = 1; i < n; ++i) edges.push_back({0, i});
            break;
        case GraphKind::Complete:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
            break;
        case GraphKind::Regular:
            return make_regular(n, degree, seed);
    }
    return Graph(n, std::move(edges));
}

bool is_connected(const Graph& g) {
    const int n = g.node_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> color(n, -1);
    for (int root = 0; root < n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (int w : g.neighbors(v)) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    queue.push(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

GraphShape classify_shape(const Graph& g) {
    GraphShape shape;
    shape.connected = is_connected(g);
    shape.has_odd_cycle = !two_coloring(g).has_value();

    const int n = g.node_count();
    const auto m = g.edge_count();
    int deg1 = 0, deg2 = 0, max_deg = 0;
    for (int i = 0; i < n; ++i) {
        const int d = g.degree(i);
        deg1 += d == 1;
        deg2 += d == 2;
        max_deg = std::max(max_deg, d);
    }
    if (shape.connected && deg1 == 2 && deg2 == n - 2) {
        shape.tag = ShapeTag::Line;
    } else if (shape.connected && deg2 == n) {
        shape.tag = ShapeTag::Cycle;
    } else if (shape.connected && m + 1 == static_cast<std::size_t>(n) && max_deg == n - 1) {
        shape.tag = ShapeTag::Star;
    } else if (shape.connected && m + 1 == static_cast<std::size_t>(n)) {
        shape.tag = ShapeTag::TreeNonLine;
    } else {
        shape.tag = shape.has_odd_cycle ? ShapeTag::GeneralOddCycle : ShapeTag::GeneralBipartite;
    }
    return shape;
}

void require_connected(const Graph& g, std::string_view what) {
    if (g.node_count() < 2) throw precondition_error(std::string(what) + ": graph needs at least 2 nodes");
    if (!is_connected(g)) throw precondition_error(std::string(what) + ": graph is not connected");
}

}  // namespace bgossip
