#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgossip/chain.hpp"
#include "bgossip/graph.hpp"
#include "bgossip/state.hpp"

namespace bgossip {

// Run-length collapsed view of a state. Kind K additionally drops the last
// digit when it wraps around to equal the first (cycle order).
struct ReducedState {
    enum class Kind { L, K };

    std::vector<std::uint8_t> digits;
    Kind kind = Kind::L;

    int length() const noexcept { return static_cast<int>(digits.size()); }
    std::string to_string() const;

    friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

// Nodes are read in index order 0..n-1.
ReducedState l_reduce(NetworkState s, int n);
ReducedState k_reduce(NetworkState s, int n);

// Greedy subsequence test on digit sequences.
bool is_subsequence(const ReducedState& needle, const ReducedState& haystack);

// Number of communication classes of the {AND, OR} chain, from the graph shape alone.
std::uint64_t predict_chi(const Graph& g);

struct ClassPrediction {
    std::uint64_t chi = 0;
    // Explicit partition: each class lists its states ascending; classes are
    // ordered by their smallest state.
    std::vector<std::vector<NetworkState>> classes;
    std::vector<std::string> labels;
};

// Explicit predicted partition; requires n <= 24.
ClassPrediction predict_classes(const Graph& g);

// Node order walking a line from its lower-labelled end, or a cycle from node
// 0 toward its lower-labelled neighbour.
std::vector<int> canonical_order(const Graph& g);

// State with node order[i] moved to position i.
NetworkState reorder(NetworkState s, const std::vector<int>& order);

// Probability that the {AND, OR} chain reaches all-ones from `start`.
double consensus_value_positive(const ChainSpec& spec, NetworkState start);

}  // namespace bgossip
