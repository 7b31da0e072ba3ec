#pragma once

#include <string_view>

#include "bgossip/graph.hpp"
#include "bgossip/rules.hpp"
#include "bgossip/state.hpp"

namespace bgossip {

// Partition of the state space used to decide absorption without building the chain:
//   AllZero     every node 0
//   AllOne      every node 1
//   Proper      endpoints differ on every edge
//   ZeroEdge    some 0-0 edge and some node 1, but no 1-1 edge
//   OneEdge     some 1-1 edge and some node 0, but no 0-0 edge
//   BothEdges   both a 0-0 and a 1-1 edge
enum class StateClass { AllZero, AllOne, Proper, ZeroEdge, OneEdge, BothEdges };

std::string_view to_string(StateClass c);

StateClass classify_state(const Graph& g, NetworkState s);

// Operators that leave a state of the given class fixed on every edge.
OpSet absorbing_ops(StateClass c);

bool is_absorbing_state(const Graph& g, NetworkState s, OpSet ops);

// Decides from (G, C) alone whether the induced chain is absorbing.
bool is_absorbing_chain_oracle(const Graph& g, OpSet ops);

// Builds both chains and reports whether their absorbing verdicts agree.
// Throws precondition_error when ops lies in the bipartiteness family B.
bool graph_independence_check(const Graph& g1, const Graph& g2, OpSet ops);

}  // namespace bgossip
