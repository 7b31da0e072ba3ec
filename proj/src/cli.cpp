#include "bgossip/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "bgossip/absorbing.hpp"
#include "bgossip/chain.hpp"
#include "bgossip/errors.hpp"
#include "bgossip/graph.hpp"
#include "bgossip/meanfield.hpp"
#include "bgossip/montecarlo.hpp"
#include "bgossip/positive.hpp"
#include "bgossip/rules.hpp"

namespace bgossip {

namespace {

struct Options {
    std::string graph;
    std::string rules = "1,7";
    std::string probs;
    std::string start;
    std::optional<double> p_star;
    double delta0 = 0.5;
    int n = 0;
    std::int64_t horizon = 0;
    std::int64_t rounds = 1;
    std::int64_t every = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    int threads = 1;
    bool overlay = false;
    bool with_recursion = false;
    bool chain = false;
};

int parse_count(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw parse_error("bad " + what + " '" + text + "'");
    return value;
}

Graph load_graph(const std::string& source, std::uint64_t seed) {
    if (source.empty()) throw parse_error("--graph is required");
    if (source.rfind("make:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(source.substr(5));
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() < 2) throw parse_error("expected make:<kind>:<n>");
        const auto& kind = parts[0];
        const int n = parse_count(parts[1], "node count");
        if (kind == "line") return make_graph(GraphKind::Line, n);
        if (kind == "cycle") return make_graph(GraphKind::Cycle, n);
        if (kind == "star") return make_graph(GraphKind::Star, n);
        if (kind == "complete") return make_graph(GraphKind::Complete, n);
        if (kind == "regular") {
            if (parts.size() != 3) throw parse_error("expected make:regular:<n>:<degree>");
            return make_graph(GraphKind::Regular, n, parse_count(parts[2], "degree"), seed);
        }
        throw parse_error("unknown graph kind '" + kind + "'");
    }
    std::ifstream in(source);
    if (!in) throw parse_error("cannot read graph file '" + source + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

RuleSet load_rules(const Options& o) {
    auto ops = parse_ops(o.rules);
    if (o.probs.empty()) return RuleSet(std::move(ops));
    return RuleSet(std::move(ops), parse_probs(o.probs));
}

ChainSpec load_spec(const Options& o) {
    auto g = load_graph(o.graph, o.seed.value_or(0));
    require_connected(g, "input");
    return ChainSpec(std::move(g), load_rules(o));
}

std::uint64_t effective_seed(const Options& o) {
    if (o.seed) return *o.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

// Writes to --out when given, otherwise to `fallback`.
void emit(const Options& o, const std::string& text, std::ostream& fallback) {
    if (o.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw parse_error("cannot write '" + o.out + "'");
    file << text;
}

std::string list_states(const std::vector<NetworkState>& states, int n, std::size_t limit) {
    std::string out;
    for (std::size_t i = 0; i < states.size() && i < limit; ++i) {
        if (i) out += ' ';
        out += to_bitstring(states[i], n);
    }
    if (states.size() > limit) out += " ... (" + std::to_string(states.size() - limit) + " more)";
    return out;
}

int cmd_classes(const Options& o, std::ostream& out) {
    const auto spec = load_spec(o);
    const int n = spec.node_count();
    const auto analysis = analyze(spec);
    const bool positive = spec.rules().op_set() == families::PST;
    int status = 0;
    if (positive) {
        const auto predicted = predict_chi(spec.graph());
        const bool match = predicted == analysis.class_count;
        out << "chi=" << predicted << " (predicted) chi=" << analysis.class_count << " (brute force) "
            << (match ? "MATCH" : "MISMATCH") << '\n';
        status = match ? 0 : 1;
    } else {
        out << "chi=" << analysis.class_count << " (brute force)\n";
    }
    out << "shape=" << to_string(classify_shape(spec.graph()).tag) << '\n';
    const auto members = class_members(analysis);
    for (std::size_t c = 0; c < members.size(); ++c) {
        out << "class " << c << " size=" << members[c].size();
        if (members[c].size() == 1 && analysis.is_absorbing(members[c][0])) out << " absorbing";
        out << ": " << list_states(members[c], n, 16) << '\n';
    }
    return status;
}

int cmd_absorbing(const Options& o, std::ostream& out) {
    const auto spec = load_spec(o);
    const auto& g = spec.graph();
    const OpSet ops = spec.rules().op_set();
    const bool oracle = is_absorbing_chain_oracle(g, ops);
    std::string reason;
    if (is_member(ops, RuleFamily::B)) {
        reason = classify_shape(g).has_odd_cycle ? "bipartiteness rule: odd cycle present"
                                                 : "bipartiteness rule: no odd cycle";
    } else if (is_member(ops, RuleFamily::COND_I)) {
        reason = "rules keep 0-0 pairs fixed";
    } else if (is_member(ops, RuleFamily::COND_II)) {
        reason = "rules keep 1-1 pairs fixed";
    } else {
        reason = "neither consensus state is absorbing";
    }
    const auto analysis = analyze(spec);
    const bool agree = analysis.is_absorbing_chain == oracle;
    out << (oracle ? "ABSORBING" : "NOT ABSORBING") << " (" << reason << "); brute force "
        << (agree ? "agrees" : "disagrees") << '\n';
    out << "absorbing_states=" << analysis.absorbing_states.size() << ": "
        << list_states(analysis.absorbing_states, spec.node_count(), 64) << '\n';
    return agree ? 0 : 1;
}

int cmd_absorb_prob(const Options& o, std::ostream& out) {
    const auto spec = load_spec(o);
    if (o.start.empty()) throw parse_error("--start is required");
    const auto start = parse_bitstring(o.start, spec.node_count());
    const auto result = absorption_probabilities(spec, start);
    std::ostringstream csv;
    csv.precision(15);
    csv << "absorbing_state,probability\n";
    double total = 0.0;
    for (const auto& [s, p] : result.probabilities) {
        csv << to_bitstring(s, spec.node_count()) << ',' << p << '\n';
        total += p;
    }
    emit(o, csv.str(), out);
    out.precision(15);
    out << "# total=" << total << " residual=" << result.residual << " iterations=" << result.iterations << '\n';
    return 0;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const auto seed = effective_seed(o);
    Options seeded = o;
    seeded.seed = seed;
    auto spec = load_spec(seeded);
    if (o.horizon < 1) throw parse_error("--horizon must be at least 1");
    StartRule start = BernoulliStart{o.delta0};
    if (!o.start.empty()) start = parse_bitstring(o.start, spec.node_count());
    const int n = spec.node_count();
    SimConfig config{spec, start, o.horizon, o.rounds, seed, o.every, o.threads};
    const auto result = run(config);

    std::string csv = to_csv(result.density_mean);
    if (o.overlay) {
        if (!spec.rules().op_set().subset_of(families::PST))
            throw parse_error("--overlay needs rules within {1,7}");
        double p_star = 0.0;
        for (std::size_t k = 0; k < spec.rules().ops().size(); ++k)
            if (spec.rules().ops()[k] == ops::OR) p_star = spec.rules().probs()[k];
        const double d0 = std::holds_alternative<BernoulliStart>(start)
                              ? o.delta0
                              : static_cast<double>(popcount(std::get<NetworkState>(start))) / n;
        const auto every = o.every > 0 ? o.every : n;
        csv += to_csv(closed_form_trajectory({n, p_star, d0}, o.horizon, every), false);
    }
    auto& report = o.out.empty() ? err : out;
    emit(o, csv, out);
    report << absorption_report(result);
    return 0;
}

int cmd_meanfield(const Options& o, std::ostream& out) {
    if (!o.p_star) throw parse_error("--p-star is required");
    if (o.n < 1) throw parse_error("--n must be positive");
    if (o.horizon < 0) throw parse_error("--horizon must be non-negative");
    const MeanFieldParams params{o.n, *o.p_star, o.delta0};
    const auto every = o.every > 0 ? o.every : 1;
    std::string csv = to_csv(closed_form_trajectory(params, o.horizon, every));
    if (o.with_recursion) csv += to_csv(recursion(params, o.horizon, every), false);
    emit(o, csv, out);
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const auto g = load_graph(o.graph, o.seed.value_or(0));
    require_connected(g, "input");
    const int n = g.node_count();
    std::ostringstream table;
    table << "rules,in_B,oracle,brute_force,absorbing_states\n";
    std::int64_t mismatches = 0;
    std::int64_t absorbing = 0;
    for (const OpSet ops : all_rule_sets()) {
        const bool oracle = is_absorbing_chain_oracle(g, ops);
        const auto analysis = analyze(ChainSpec(g, RuleSet(ops)));
        mismatches += oracle != analysis.is_absorbing_chain;
        absorbing += analysis.is_absorbing_chain;
        table << '"' << ops.to_string() << "\"," << is_member(ops, RuleFamily::B) << ',' << oracle << ','
              << analysis.is_absorbing_chain << ',' << analysis.absorbing_states.size() << '\n';
    }
    emit(o, table.str(), out);
    out << "# n=" << n << " rule_sets=65535 absorbing=" << absorbing << " mismatches=" << mismatches << '\n';
    return mismatches == 0 ? 0 : 1;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
    if (!o.chain) {
        const auto g = load_graph(o.graph, o.seed.value_or(0));
        emit(o, export_dot(g), out);
        return 0;
    }
    const auto spec = load_spec(o);
    emit(o, export_dot(spec, analyze(spec)), out);
    return 0;
}

int cmd_transitions(const Options& o, std::ostream& out) {
    emit(o, transitions_csv(load_spec(o)), out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and simulated analysis of randomized Boolean gossip"};
    app.require_subcommand(1);
    Options o;

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", o.graph, "edge-list file or make:<line|cycle|star|complete>:<n>, make:regular:<n>:<d>")
            ->required();
    };
    auto add_rules = [&](CLI::App* sub) {
        sub->add_option("--rules", o.rules, "comma-separated hex operator indices (default 1,7)");
        sub->add_option("--probs", o.probs, "comma-separated rule probabilities (default uniform)");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path");
        sub->add_option("--seed", o.seed, "RNG seed");
    };

    auto* classes = app.add_subcommand("classes", "predicted vs brute-force communication classes");
    auto* absorbing = app.add_subcommand("absorbing", "closed-form vs brute-force absorbing verdict");
    auto* absorb_prob = app.add_subcommand("absorb-prob", "absorption distribution from a start state");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo sample paths");
    auto* meanfield = app.add_subcommand("meanfield", "mean-field density trajectory");
    auto* sweep = app.add_subcommand("sweep-rules", "oracle vs brute force over every nonempty rule set");
    auto* dot = app.add_subcommand("export-dot", "DOT of the graph, or of the chain with --chain");
    auto* transitions = app.add_subcommand("transitions", "transition rows as CSV");

    for (auto* sub : {classes, absorbing, absorb_prob, simulate, dot, transitions}) {
        add_graph(sub);
        add_rules(sub);
        add_common(sub);
    }
    add_graph(sweep);
    add_common(sweep);
    add_common(meanfield);

    absorb_prob->add_option("--start", o.start, "start state, node 1 leftmost")->required();
    simulate->add_option("--start", o.start, "fixed start state (default: Bernoulli(--delta0))");
    simulate->add_option("--delta0", o.delta0, "initial density");
    simulate->add_option("--horizon", o.horizon, "steps per round")->required();
    simulate->add_option("--rounds", o.rounds, "independent rounds");
    simulate->add_option("--every", o.every, "sampling interval in steps (default n)");
    simulate->add_option("--threads", o.threads, "worker threads");
    simulate->add_flag("--overlay", o.overlay, "append the mean-field closed form");
    meanfield->add_option("--p-star", o.p_star, "probability of OR")->required();
    meanfield->add_option("--delta0", o.delta0, "initial density");
    meanfield->add_option("--n", o.n, "node count")->required();
    meanfield->add_option("--horizon", o.horizon, "steps")->required();
    meanfield->add_option("--every", o.every, "sampling interval in steps (default 1)");
    meanfield->add_flag("--recursion", o.with_recursion, "append the step recursion");
    dot->add_flag("--chain", o.chain, "export the state-transition chain instead of the graph");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*classes) return cmd_classes(o, out);
        if (*absorbing) return cmd_absorbing(o, out);
        if (*absorb_prob) return cmd_absorb_prob(o, out);
        if (*simulate) return cmd_simulate(o, out, err);
        if (*meanfield) return cmd_meanfield(o, out);
        if (*sweep) return cmd_sweep(o, out);
        if (*dot) return cmd_export_dot(o, out);
        if (*transitions) return cmd_transitions(o, out);
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace bgossip
