#include "bgossip/absorbing.hpp"

#include "bgossip/chain.hpp"
#include "bgossip/errors.hpp"

namespace bgossip {

std::string_view to_string(StateClass c) {
    switch (c) {
        case StateClass::AllZero: return "C1_allzero";
        case StateClass::AllOne: return "C2_allone";
        case StateClass::Proper: return "C3_proper";
        case StateClass::ZeroEdge: return "C4_only";
        case StateClass::OneEdge: return "C5_only";
        case StateClass::BothEdges: return "C4_and_C5";
    }
    return "?";
}

StateClass classify_state(const Graph& g, NetworkState s) {
    const int n = g.node_count();
    const int ones = popcount(NetworkState{s.bits & NetworkState::ones(n).bits});
    if (ones == 0) return StateClass::AllZero;
    if (ones == n) return StateClass::AllOne;
    bool zero_edge = false;
    bool one_edge = false;
    for (const auto& [u, v] : g.edges()) {
        const int a = s.get(u);
        if (a != s.get(v)) continue;
        (a ? one_edge : zero_edge) = true;
    }
    if (zero_edge && one_edge) return StateClass::BothEdges;
    if (zero_edge) return StateClass::ZeroEdge;
    if (one_edge) return StateClass::OneEdge;
    return StateClass::Proper;
}

OpSet absorbing_ops(StateClass c) {
    switch (c) {
        case StateClass::AllZero: return families::COND_I;
        case StateClass::AllOne: return families::COND_II;
        case StateClass::Proper: return families::FROZEN_23AB;
        case StateClass::ZeroEdge: return families::KEEP_ZERO_EDGE;
        case StateClass::OneEdge: return families::KEEP_ONE_EDGE;
        case StateClass::BothEdges: return families::PROJECTION;
    }
    return {};
}

bool is_absorbing_state(const Graph& g, NetworkState s, OpSet ops) {
    return ops.subset_of(absorbing_ops(classify_state(g, s)));
}

bool is_absorbing_chain_oracle(const Graph& g, OpSet ops) {
    if (is_member(ops, RuleFamily::B)) return two_coloring(g).has_value();
    return is_member(ops, RuleFamily::COND_I) || is_member(ops, RuleFamily::COND_II);
}

bool graph_independence_check(const Graph& g1, const Graph& g2, OpSet ops) {
    if (is_member(ops, RuleFamily::B))
        throw precondition_error("rule set " + ops.to_string() + " is in the bipartiteness family");
    const RuleSet rules(ops);
    return analyze(ChainSpec(g1, rules)).is_absorbing_chain == analyze(ChainSpec(g2, rules)).is_absorbing_chain;
}

}  // namespace bgossip
