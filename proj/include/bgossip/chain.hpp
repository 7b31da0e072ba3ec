#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bgossip/graph.hpp"
#include "bgossip/rules.hpp"
#include "bgossip/state.hpp"

namespace bgossip {

// Per-rule-set outcome of a single endpoint update, indexed by 2*own + other.
struct OutcomeTable {
    // bit 0: result 0 reachable, bit 1: result 1 reachable.
    std::array<std::uint8_t, 4> support{};
    // p[2*own + other][result]
    std::array<std::array<double, 2>, 4> p{};

    static OutcomeTable of(const RuleSet& rules);

    double prob(int own, int other, int result) const noexcept { return p[2 * own + other][result]; }
    // Both endpoints keep their values under every operator draw.
    bool frozen(int a, int b) const noexcept {
        return support[2 * a + b] == (1u << a) && support[2 * b + a] == (1u << b);
    }
};

// Graph + rule set + edge selection weights (uniform unless given).
class ChainSpec {
public:
    ChainSpec(Graph graph, RuleSet rules);
    ChainSpec(Graph graph, RuleSet rules, std::vector<double> edge_weights);

    const Graph& graph() const noexcept { return graph_; }
    const RuleSet& rules() const noexcept { return rules_; }
    const std::vector<double>& edge_weights() const noexcept { return weights_; }
    const OutcomeTable& outcomes() const noexcept { return outcomes_; }
    int node_count() const noexcept { return graph_.node_count(); }

private:
    Graph graph_;
    RuleSet rules_;
    std::vector<double> weights_;
    OutcomeTable outcomes_;
};

struct TransitionRow {
    NetworkState source;
    // Sorted by state word, probabilities > 0.
    std::vector<std::pair<NetworkState, double>> targets;
};

struct ChainAnalysis {
    int node_count = 0;
    // Indexed by state word; class ids are assigned in completion order, so
    // every class reachable from class c has an id <= c.
    std::vector<std::uint32_t> class_of;
    std::uint32_t class_count = 0;
    // Ascending.
    std::vector<NetworkState> absorbing_states;
    bool is_absorbing_chain = false;

    bool is_absorbing(NetworkState s) const;
    // Every non-absorbing state, ascending.
    std::vector<NetworkState> transient_states() const;

    friend bool operator==(const ChainAnalysis&, const ChainAnalysis&) = default;
};

struct AnalyzeOptions {
    int max_nodes = 24;
};

struct AbsorptionOptions {
    int max_nodes = 16;
    double tolerance = 1e-14;
    long long max_iterations = 10'000'000;
};

struct AbsorptionResult {
    std::map<NetworkState, double> probabilities;
    // ||x(I-Q) - e_start||_inf for the expected-visit row x.
    double residual = 0.0;
    long long iterations = 0;
};

// `edge` holds 0-indexed endpoints with u < v; op_u is drawn by the smaller node.
NetworkState step_pair(NetworkState s, Edge edge, BooleanOp op_u, BooleanOp op_v) noexcept;

TransitionRow transition_row(const ChainSpec& spec, NetworkState s);

// Exact support test: some (edge, op, op) triple moves s to target.
bool has_transition(const ChainSpec& spec, NetworkState s, NetworkState target);

bool is_absorbing_row(const ChainSpec& spec, NetworkState s);

ChainAnalysis analyze(const ChainSpec& spec, const AnalyzeOptions& options = {});

AbsorptionResult absorption_probabilities(const ChainSpec& spec, NetworkState start,
                                          const AbsorptionOptions& options = {});

// Requires n <= 8.
std::string export_dot(const ChainSpec& spec, const ChainAnalysis& analysis);

// "source,target,prob" for every state; requires n <= 16.
std::string transitions_csv(const ChainSpec& spec);

// Member lists of each class, indexed by class id, states ascending.
std::vector<std::vector<NetworkState>> class_members(const ChainAnalysis& analysis);

}  // namespace bgossip
