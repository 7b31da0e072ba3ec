#include "bgossip/positive.hpp"

#include <algorithm>
#include <map>

#include "bgossip/errors.hpp"

namespace bgossip {

std::string ReducedState::to_string() const {
    std::string out = "[";
    for (auto d : digits) out += static_cast<char>('0' + d);
    return out + "]";
}

ReducedState l_reduce(NetworkState s, int n) {
    ReducedState r;
    for (int i = 0; i < n; ++i) {
        const auto bit = static_cast<std::uint8_t>(s.get(i));
        if (r.digits.empty() || r.digits.back() != bit) r.digits.push_back(bit);
    }
    return r;
}

ReducedState k_reduce(NetworkState s, int n) {
    auto r = l_reduce(s, n);
    r.kind = ReducedState::Kind::K;
    if (r.digits.size() > 1 && r.digits.back() == r.digits.front()) r.digits.pop_back();
    return r;
}

bool is_subsequence(const ReducedState& needle, const ReducedState& haystack) {
    std::size_t i = 0;
    for (auto d : haystack.digits)
        if (i < needle.digits.size() && needle.digits[i] == d) ++i;
    return i == needle.digits.size();
}

std::uint64_t predict_chi(const Graph& g) {
    require_connected(g, "predict_chi");
    const auto shape = classify_shape(g);
    const auto n = static_cast<std::uint64_t>(g.node_count());
    switch (shape.tag) {
        case ShapeTag::Line: return 2 * n;
        case ShapeTag::Cycle: return n % 2 == 0 ? n / 2 + 3 : (n - 1) / 2 + 2;
        case ShapeTag::GeneralOddCycle: return 3;
        case ShapeTag::Star:
        case ShapeTag::TreeNonLine:
        case ShapeTag::GeneralBipartite: return 5;
    }
    return 0;
}

std::vector<int> canonical_order(const Graph& g) {
    const auto tag = classify_shape(g).tag;
    const int n = g.node_count();
    int start = 0;
    if (tag == ShapeTag::Line) {
        while (g.degree(start) != 1) ++start;
    } else if (tag != ShapeTag::Cycle) {
        throw precondition_error("canonical order needs a line or cycle graph");
    }
    std::vector<int> order{start};
    int prev = -1;
    int cur = start;
    while (static_cast<int>(order.size()) < n) {
        const auto& nbrs = g.neighbors(cur);
        const int next = nbrs.front() != prev ? nbrs.front() : nbrs.back();
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    return order;
}

NetworkState reorder(NetworkState s, const std::vector<int>& order) {
    NetworkState out;
    for (std::size_t i = 0; i < order.size(); ++i) out = out.with(static_cast<int>(i), s.get(order[i]));
    return out;
}

ClassPrediction predict_classes(const Graph& g) {
    require_connected(g, "predict_classes");
    const int n = g.node_count();
    if (n > 24) throw capacity_error("predict_classes: at most 24 nodes, got " + std::to_string(n));
    const auto tag = classify_shape(g).tag;
    const std::uint64_t count = std::uint64_t{1} << n;
    const NetworkState all_ones = NetworkState::ones(n);

    std::vector<int> order;
    if (tag == ShapeTag::Line || tag == ShapeTag::Cycle) order = canonical_order(g);

    auto is_proper = [&](NetworkState s) {
        return std::all_of(g.edges().begin(), g.edges().end(),
                           [&](const Edge& e) { return s.get(e.u) != s.get(e.v); });
    };

    auto label_of = [&](NetworkState s) -> std::string {
        if (s == NetworkState::zeros()) return tag == ShapeTag::Line ? "L[0]" : tag == ShapeTag::Cycle ? "K[0]" : "J1";
        if (s == all_ones) return tag == ShapeTag::Line ? "L[1]" : tag == ShapeTag::Cycle ? "K[1]" : "J2";
        switch (tag) {
            case ShapeTag::Line: return "L" + l_reduce(reorder(s, order), n).to_string();
            case ShapeTag::Cycle: {
                const auto k = k_reduce(reorder(s, order), n);
                if (k.length() == n) return "K" + k.to_string();
                return "K|" + std::to_string(k.length()) + "|";
            }
            case ShapeTag::GeneralOddCycle: return "J3-5";
            default:
                if (is_proper(s)) return s.get(0) ? "J4" : "J3";
                return "J5";
        }
    };

    ClassPrediction out;
    std::map<std::string, std::size_t> slot;
    for (std::uint64_t w = 0; w < count; ++w) {
        const NetworkState s{w};
        auto label = label_of(s);
        auto [it, inserted] = slot.emplace(label, out.classes.size());
        if (inserted) {
            out.classes.emplace_back();
            out.labels.push_back(std::move(label));
        }
        out.classes[it->second].push_back(s);
    }
    out.chi = out.classes.size();
    return out;
}

double consensus_value_positive(const ChainSpec& spec, NetworkState start) {
    if (!spec.rules().op_set().subset_of(families::PST))
        throw precondition_error("consensus_value_positive needs rules within {AND, OR}");
    const int n = spec.node_count();
    if (start == NetworkState::zeros() || start == NetworkState::ones(n))
        throw precondition_error("start state " + to_bitstring(start, n) + " is already a consensus");
    const auto result = absorption_probabilities(spec, start);
    const auto it = result.probabilities.find(NetworkState::ones(n));
    return it == result.probabilities.end() ? 0.0 : it->second;
}

}  // namespace bgossip
