#include "bgossip/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "bgossip/errors.hpp"

namespace bgossip {

OutcomeTable OutcomeTable::of(const RuleSet& rules) {
    OutcomeTable table;
    for (int own = 0; own < 2; ++own) {
        for (int other = 0; other < 2; ++other) {
            const int slot = 2 * own + other;
            for (int k = 0; k < rules.size(); ++k) {
                const int r = rules.ops()[static_cast<std::size_t>(k)].eval(own, other);
                table.support[slot] |= static_cast<std::uint8_t>(1u << r);
                table.p[slot][r] += rules.probs()[static_cast<std::size_t>(k)];
            }
        }
    }
    return table;
}

ChainSpec::ChainSpec(Graph graph, RuleSet rules)
    : ChainSpec(std::move(graph), std::move(rules), {}) {}

ChainSpec::ChainSpec(Graph graph, RuleSet rules, std::vector<double> edge_weights)
    : graph_(std::move(graph)), rules_(std::move(rules)), weights_(std::move(edge_weights)),
      outcomes_(OutcomeTable::of(rules_)) {
    require_connected(graph_, "chain");
    const auto m = graph_.edge_count();
    if (weights_.empty()) {
        weights_.assign(m, 1.0 / static_cast<double>(m));
        return;
    }
    if (weights_.size() != m)
        throw precondition_error("expected " + std::to_string(m) + " edge weights, got " +
                                 std::to_string(weights_.size()));
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw precondition_error("edge weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw precondition_error("edge weights must sum to 1");
}

bool ChainAnalysis::is_absorbing(NetworkState s) const {
    return std::binary_search(absorbing_states.begin(), absorbing_states.end(), s);
}

std::vector<NetworkState> ChainAnalysis::transient_states() const {
    std::vector<NetworkState> out;
    out.reserve(class_of.size() - absorbing_states.size());
    auto next_absorbing = absorbing_states.begin();
    for (std::uint64_t w = 0; w < class_of.size(); ++w) {
        if (next_absorbing != absorbing_states.end() && next_absorbing->bits == w) {
            ++next_absorbing;
            continue;
        }
        out.push_back({w});
    }
    return out;
}

NetworkState step_pair(NetworkState s, Edge edge, BooleanOp op_u, BooleanOp op_v) noexcept {
    const int a = s.get(edge.u);
    const int b = s.get(edge.v);
    return s.with(edge.u, op_u.eval(a, b)).with(edge.v, op_v.eval(b, a));
}

namespace {

// Calls fn(target, edge_index, old_u, old_v, new_u, new_v) for every supported pair outcome.
template <typename Fn>
void for_each_outcome(const ChainSpec& spec, NetworkState s, Fn&& fn) {
    const auto& edges = spec.graph().edges();
    const auto& table = spec.outcomes();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        const int a = s.get(u);
        const int b = s.get(v);
        const auto su = table.support[static_cast<std::size_t>(2 * a + b)];
        const auto sv = table.support[static_cast<std::size_t>(2 * b + a)];
        for (int x = 0; x < 2; ++x) {
            if (!((su >> x) & 1u)) continue;
            for (int y = 0; y < 2; ++y) {
                if (!((sv >> y) & 1u)) continue;
                fn(s.with(u, x).with(v, y), e, a, b, x, y);
            }
        }
    }
}

void check_cap(const ChainSpec& spec, int cap, const char* what) {
    if (spec.node_count() > cap || spec.node_count() > 62)
        throw capacity_error(std::string(what) + ": " + std::to_string(spec.node_count()) +
                             " nodes exceeds the cap of " + std::to_string(cap));
}

}  // namespace

TransitionRow transition_row(const ChainSpec& spec, NetworkState s) {
    TransitionRow row{s, {}};
    const auto& table = spec.outcomes();
    const auto& weights = spec.edge_weights();
    for_each_outcome(spec, s, [&](NetworkState t, std::size_t e, int a, int b, int x, int y) {
        row.targets.emplace_back(t, weights[e] * table.prob(a, b, x) * table.prob(b, a, y));
    });
    std::sort(row.targets.begin(), row.targets.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<NetworkState, double>> merged;
    for (const auto& [t, p] : row.targets) {
        if (!merged.empty() && merged.back().first == t) merged.back().second += p;
        else merged.emplace_back(t, p);
    }
    row.targets = std::move(merged);
    return row;
}

bool has_transition(const ChainSpec& spec, NetworkState s, NetworkState target) {
    bool found = false;
    for_each_outcome(spec, s, [&](NetworkState t, auto...) { found = found || t == target; });
    return found;
}

bool is_absorbing_row(const ChainSpec& spec, NetworkState s) {
    const auto& table = spec.outcomes();
    for (const auto& [u, v] : spec.graph().edges())
        if (!table.frozen(s.get(u), s.get(v))) return false;
    return true;
}

ChainAnalysis analyze(const ChainSpec& spec, const AnalyzeOptions& options) {
    check_cap(spec, options.max_nodes, "analyze");
    const int n = spec.node_count();
    const std::uint64_t state_count = std::uint64_t{1} << n;
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    const auto& edges = spec.graph().edges();
    const auto& table = spec.outcomes();

    ChainAnalysis result;
    result.node_count = n;
    result.class_of.assign(state_count, none);
    std::vector<std::uint32_t> index(state_count, none);
    std::vector<std::uint32_t> low(state_count, 0);
    std::vector<std::uint64_t> tarjan_stack;
    std::vector<std::uint8_t> class_reaches_absorbing;

    // DFS frame: state plus the position of its successor cursor.
    struct Frame {
        std::uint64_t state;
        std::uint32_t edge;
        std::uint8_t combo;
    };
    std::vector<Frame> call_stack;

    // Advances the cursor to the next supported successor.
    auto next_successor = [&](Frame& f, std::uint64_t& out) {
        const NetworkState s{f.state};
        while (f.edge < edges.size()) {
            const auto [u, v] = edges[f.edge];
            const int a = s.get(u);
            const int b = s.get(v);
            const auto su = table.support[static_cast<std::size_t>(2 * a + b)];
            const auto sv = table.support[static_cast<std::size_t>(2 * b + a)];
            while (f.combo < 4) {
                const int x = f.combo >> 1;
                const int y = f.combo & 1;
                ++f.combo;
                if (((su >> x) & 1u) && ((sv >> y) & 1u)) {
                    out = s.with(u, x).with(v, y).bits;
                    return true;
                }
            }
            ++f.edge;
            f.combo = 0;
        }
        return false;
    };

    std::uint32_t counter = 0;
    for (std::uint64_t root = 0; root < state_count; ++root) {
        if (index[root] != none) continue;
        index[root] = low[root] = counter++;
        tarjan_stack.push_back(root);
        call_stack.push_back({root, 0, 0});

        while (!call_stack.empty()) {
            auto& frame = call_stack.back();
            std::uint64_t w = 0;
            if (next_successor(frame, w)) {
                if (index[w] == none) {
                    index[w] = low[w] = counter++;
                    tarjan_stack.push_back(w);
                    call_stack.push_back({w, 0, 0});
                } else if (result.class_of[w] == none) {
                    low[frame.state] = std::min(low[frame.state], index[w]);
                }
                continue;
            }

            const std::uint64_t v = frame.state;
            call_stack.pop_back();
            if (!call_stack.empty()) {
                const std::uint64_t parent = call_stack.back().state;
                low[parent] = std::min(low[parent], low[v]);
            }
            if (low[v] != index[v]) continue;

            const std::uint32_t id = result.class_count++;
            std::size_t first = tarjan_stack.size();
            do {
                --first;
                result.class_of[tarjan_stack[first]] = id;
            } while (tarjan_stack[first] != v);

            std::uint8_t reaches = 0;
            if (tarjan_stack.size() - first == 1 && is_absorbing_row(spec, NetworkState{v})) {
                result.absorbing_states.push_back({v});
                reaches = 1;
            } else {
                for (std::size_t i = first; i < tarjan_stack.size() && !reaches; ++i) {
                    Frame probe{tarjan_stack[i], 0, 0};
                    std::uint64_t t = 0;
                    while (next_successor(probe, t)) {
                        const auto c = result.class_of[t];
                        if (c != id && class_reaches_absorbing[c]) {
                            reaches = 1;
                            break;
                        }
                    }
                }
            }
            class_reaches_absorbing.push_back(reaches);
            tarjan_stack.resize(first);
        }
    }

    std::sort(result.absorbing_states.begin(), result.absorbing_states.end());
    result.is_absorbing_chain =
        !result.absorbing_states.empty() &&
        std::all_of(class_reaches_absorbing.begin(), class_reaches_absorbing.end(),
                    [](std::uint8_t r) { return r != 0; });
    return result;
}

AbsorptionResult absorption_probabilities(const ChainSpec& spec, NetworkState start,
                                          const AbsorptionOptions& options) {
    check_cap(spec, options.max_nodes, "absorption_probabilities");
    const int n = spec.node_count();
    if (start.bits >> n) throw precondition_error("start state has bits beyond node count");

    const auto analysis = analyze(spec, {options.max_nodes});
    if (!analysis.is_absorbing_chain) throw domain_error("chain is not absorbing");
    if (analysis.is_absorbing(start))
        throw precondition_error("start state " + to_bitstring(start, n) + " is absorbing, not transient");

    // Transient states reachable from start, with sparse Q and R rows.
    std::unordered_map<std::uint64_t, std::uint32_t> local;
    std::vector<NetworkState> transient{start};
    local.emplace(start.bits, 0);
    std::vector<std::uint32_t> q_offsets{0};
    std::vector<std::pair<std::uint32_t, double>> q_entries;
    std::vector<std::vector<std::pair<NetworkState, double>>> r_rows;

    for (std::size_t i = 0; i < transient.size(); ++i) {
        const auto row = transition_row(spec, transient[i]);
        std::vector<std::pair<NetworkState, double>> r_row;
        for (const auto& [t, p] : row.targets) {
            if (analysis.is_absorbing(t)) {
                r_row.emplace_back(t, p);
                continue;
            }
            auto [it, inserted] = local.emplace(t.bits, static_cast<std::uint32_t>(transient.size()));
            if (inserted) transient.push_back(t);
            q_entries.emplace_back(it->second, p);
        }
        q_offsets.push_back(static_cast<std::uint32_t>(q_entries.size()));
        r_rows.push_back(std::move(r_row));
    }

    const std::size_t m = transient.size();
    std::vector<double> mass(m, 0.0), next(m, 0.0), visits(m, 0.0);
    mass[0] = 1.0;
    AbsorptionResult result;
    double remaining = 1.0;
    while (remaining > options.tolerance) {
        if (result.iterations >= options.max_iterations)
            throw numeric_error("absorption iteration did not converge; remaining transient mass " +
                                    std::to_string(remaining),
                                remaining);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double w = mass[i];
            if (w == 0.0) continue;
            visits[i] += w;
            for (auto k = q_offsets[i]; k < q_offsets[i + 1]; ++k) next[q_entries[k].first] += w * q_entries[k].second;
            for (const auto& [t, p] : r_rows[i]) result.probabilities[t] += w * p;
        }
        mass.swap(next);
        remaining = std::accumulate(mass.begin(), mass.end(), 0.0);
        ++result.iterations;
    }

    // residual of x(I - Q) = e_start
    std::vector<double> lhs(visits);
    for (std::size_t i = 0; i < m; ++i)
        for (auto k = q_offsets[i]; k < q_offsets[i + 1]; ++k) lhs[q_entries[k].first] -= visits[i] * q_entries[k].second;
    lhs[0] -= 1.0;
    for (double r : lhs) result.residual = std::max(result.residual, std::abs(r));
    return result;
}

std::vector<std::vector<NetworkState>> class_members(const ChainAnalysis& analysis) {
    std::vector<std::vector<NetworkState>> out(analysis.class_count);
    for (std::uint64_t w = 0; w < analysis.class_of.size(); ++w) out[analysis.class_of[w]].push_back({w});
    return out;
}

std::string export_dot(const ChainSpec& spec, const ChainAnalysis& analysis) {
    const int n = spec.node_count();
    if (n > 8) throw capacity_error("export_dot: at most 8 nodes, got " + std::to_string(n));
    std::ostringstream out;
    out << "digraph chain {\n  node [style=filled];\n";
    const std::uint64_t count = std::uint64_t{1} << n;
    char color[32];
    for (std::uint64_t w = 0; w < count; ++w) {
        const NetworkState s{w};
        const auto c = analysis.class_of[w];
        std::snprintf(color, sizeof color, "%.3f 0.450 0.950", static_cast<double>(c) / analysis.class_count);
        out << "  \"" << to_bitstring(s, n) << "\" [fillcolor=\"" << color << "\", class=" << c;
        if (analysis.is_absorbing(s)) out << ", shape=doublecircle, absorbing=true";
        out << "];\n";
    }
    char prob[32];
    for (std::uint64_t w = 0; w < count; ++w) {
        const auto row = transition_row(spec, NetworkState{w});
        for (const auto& [t, p] : row.targets) {
            std::snprintf(prob, sizeof prob, "%.4g", p);
            out << "  \"" << to_bitstring(row.source, n) << "\" -> \"" << to_bitstring(t, n) << "\" [label=\""
                << prob << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string transitions_csv(const ChainSpec& spec) {
    const int n = spec.node_count();
    if (n > 16) throw capacity_error("transitions_csv: at most 16 nodes, got " + std::to_string(n));
    std::ostringstream out;
    out.precision(17);
    out << "source,target,prob\n";
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        const auto row = transition_row(spec, NetworkState{w});
        for (const auto& [t, p] : row.targets)
            out << to_bitstring(row.source, n) << ',' << to_bitstring(t, n) << ',' << p << '\n';
    }
    return out.str();
}

}  // namespace bgossip
