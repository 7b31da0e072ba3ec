#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "bgossip/absorbing.hpp"
#include "bgossip/chain.hpp"
#include "bgossip/errors.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace bgossip;

namespace {

NetworkState st(const char* bits) { return parse_bitstring(bits, static_cast<int>(std::string_view(bits).size())); }

std::set<std::set<int>> partition_of(const ChainAnalysis& a) {
    std::set<std::set<int>> out;
    for (const auto& members : class_members(a)) {
        std::set<int> cls;
        for (auto s : members) cls.insert(static_cast<int>(s.bits));
        out.insert(cls);
    }
    return out;
}

std::vector<int> indices_of(const OpSet& set) {
    std::vector<int> out;
    for (auto op : set.members()) out.push_back(op.index());
    return out;
}

std::vector<double> random_simplex(std::size_t k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> v(k);
    double total = 0.0;
    for (auto& x : v) total += x = u(rng);
    for (auto& x : v) x /= total;
    // Push the rounding residue into the last entry so the sum is exact enough.
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) head += v[i];
    v.back() = 1.0 - head;
    return v;
}

}  // namespace

TEST_CASE("single pair updates") {
    const Edge e{0, 1};
    CHECK(step_pair(st("10"), e, BooleanOp(3), BooleanOp(3)) == st("10"));
    CHECK(step_pair(st("01"), e, ops::OR, ops::OR) == st("11"));
    CHECK(step_pair(st("11"), e, ops::XOR, ops::XOR) == st("00"));
    CHECK(step_pair(st("01"), e, ops::AND, ops::AND) == st("00"));
    // Independent draws let a discordant pair exchange its values.
    CHECK(step_pair(st("01"), e, ops::OR, ops::AND) == st("10"));
    CHECK(step_pair(st("0110"), Edge{1, 3}, ops::AND, ops::OR) == st("0011"));
}

TEST_CASE("transition rows") {
    const auto cycle4 = make_graph(GraphKind::Cycle, 4);
    const ChainSpec pst(cycle4, RuleSet(families::PST));

    auto row = transition_row(pst, st("0000"));
    REQUIRE(row.targets.size() == 1);
    CHECK(row.targets[0].first == st("0000"));
    CHECK(row.targets[0].second == 1.0);

    const ChainSpec projection(cycle4, RuleSet(OpSet{3}));
    for (std::uint64_t w = 0; w < 16; ++w) {
        const auto r = transition_row(projection, NetworkState{w});
        REQUIRE(r.targets.size() == 1);
        CHECK(r.targets[0].first.bits == w);
    }

    const ChainSpec single(make_graph(GraphKind::Line, 2), RuleSet(OpSet{1}));
    row = transition_row(single, st("01"));
    REQUIRE(row.targets.size() == 1);
    CHECK(row.targets[0].first == st("00"));

    SUBCASE("line(2) under {AND, OR} with p = 0.3 on OR") {
        const ChainSpec spec(make_graph(GraphKind::Line, 2), positive_rules(0.3));
        const auto r = transition_row(spec, st("01"));
        std::map<std::string, double> got;
        for (const auto& [t, p] : r.targets) got[to_bitstring(t, 2)] = p;
        CHECK(got["11"] == doctest::Approx(0.09));
        CHECK(got["00"] == doctest::Approx(0.49));
        CHECK(got["10"] == doctest::Approx(0.21));
        CHECK(got["01"] == doctest::Approx(0.21));
    }

    SUBCASE("rows match the dense oracle and sum to one") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> mask(1, 0xFFFF);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 2 + trial % 5;
            const auto g = corpus::random_connected(n, rng);
            const OpSet set(static_cast<std::uint16_t>(mask(rng)));
            const auto ops = set.members();
            const auto probs = random_simplex(ops.size(), rng);
            const auto weights = random_simplex(g.edge_count(), rng);
            const ChainSpec spec(g, RuleSet(ops, probs), weights);
            const auto dense = oracle::build(n, corpus::pairs(g), indices_of(set), probs, weights);
            for (int s = 0; s < (1 << n); ++s) {
                const auto r = transition_row(spec, NetworkState{static_cast<std::uint64_t>(s)});
                double total = 0.0;
                std::uint64_t last = 0;
                bool first = true;
                for (const auto& [t, p] : r.targets) {
                    CHECK(p > 0.0);
                    CHECK(p == doctest::Approx(dense.p[static_cast<std::size_t>(s)][t.bits]).epsilon(1e-12));
                    if (!first) CHECK(t.bits > last);
                    first = false;
                    last = t.bits;
                    total += p;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("analysis agrees with the dense oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> mask(1, 0xFFFF);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 5;
        const auto g = corpus::random_connected(n, rng);
        const OpSet set = trial % 3 == 0 ? families::PST : OpSet(static_cast<std::uint16_t>(mask(rng)));
        const auto a = analyze(ChainSpec(g, RuleSet(set)));
        const auto ref = oracle::classes(oracle::build_uniform(n, corpus::pairs(g), indices_of(set)));
        INFO(corpus::describe(g), " rules ", set.to_string());
        CHECK(a.class_count == ref.partition.size());
        CHECK(partition_of(a) == ref.partition);
        CHECK(a.is_absorbing_chain == ref.absorbing_chain);
        std::vector<int> absorbing;
        for (auto s : a.absorbing_states) absorbing.push_back(static_cast<int>(s.bits));
        CHECK(absorbing == ref.absorbing);
    }
}

TEST_CASE("class ids follow completion order") {
    const auto a = analyze(ChainSpec(parse_edge_list("1 2\n2 3\n3 1\n3 4\n"), RuleSet(families::PST)));
    CHECK(a.class_count == 3);
    // The transient bulk reaches both consensus classes, which finish first.
    CHECK(a.class_of[0] < a.class_of[5]);
    CHECK(a.class_of[15] < a.class_of[5]);
}

TEST_CASE("absorbing states match the state classification") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> mask(1, 0xFFFF);
    std::uniform_int_distribution<int> size(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = corpus::random_connected(size(rng), rng);
        const OpSet set(static_cast<std::uint16_t>(mask(rng)));
        const ChainSpec spec(g, RuleSet(set));
        const auto a = analyze(spec);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << g.node_count()); ++w) {
            const NetworkState s{w};
            CHECK(a.is_absorbing(s) == is_absorbing_state(g, s, set));
            CHECK(a.is_absorbing(s) == is_absorbing_row(spec, s));
        }
    }
}

TEST_CASE("support invariance") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> mask(1, 0xFFFF);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 5;
        const auto g = corpus::random_connected(n, rng);
        const auto ops = OpSet(static_cast<std::uint16_t>(mask(rng))).members();
        const ChainSpec a(g, RuleSet(ops, random_simplex(ops.size(), rng)), random_simplex(g.edge_count(), rng));
        const ChainSpec b(g, RuleSet(ops, random_simplex(ops.size(), rng)), random_simplex(g.edge_count(), rng));
        CHECK(analyze(a) == analyze(b));
    }
}

TEST_CASE("absorption probabilities") {
    SUBCASE("single edge, pure OR") {
        const ChainSpec spec(make_graph(GraphKind::Line, 2), positive_rules(1.0));
        const auto r = absorption_probabilities(spec, st("01"));
        REQUIRE(r.probabilities.size() == 1);
        CHECK(r.probabilities.at(st("11")) == doctest::Approx(1.0));
    }
    SUBCASE("single edge, p = 0.3") {
        const ChainSpec spec(make_graph(GraphKind::Line, 2), positive_rules(0.3));
        const auto r = absorption_probabilities(spec, st("01"));
        CHECK(std::abs(r.probabilities.at(st("11")) - 9.0 / 58.0) <= 1e-9);
        CHECK(r.residual <= 1e-10);
    }
    SUBCASE("matches Gaussian elimination") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 4;
            const auto g = corpus::random_connected(n, rng);
            const OpSet set = trial % 2 ? families::PST : OpSet{0x2, 0x3};
            const auto probs = random_simplex(static_cast<std::size_t>(set.size()), rng);
            const ChainSpec spec(g, RuleSet(set.members(), probs));
            const auto dense = oracle::build(n, corpus::pairs(g), indices_of(set), probs);
            const auto a = analyze(spec);
            for (auto start : a.transient_states()) {
                const auto got = absorption_probabilities(spec, start);
                const auto want = oracle::absorption(dense, static_cast<int>(start.bits));
                double total = 0.0;
                for (const auto& [s, p] : got.probabilities) {
                    total += p;
                    const auto it = want.find(static_cast<int>(s.bits));
                    CHECK(std::abs(p - (it == want.end() ? 0.0 : it->second)) <= 1e-9);
                }
                CHECK(std::abs(total - 1.0) <= 1e-9);
                CHECK(got.residual <= 1e-10);
            }
        }
    }
    SUBCASE("errors") {
        const ChainSpec pst(make_graph(GraphKind::Cycle, 4), RuleSet(families::PST));
        CHECK_THROWS_AS(absorption_probabilities(pst, st("0000")), precondition_error);
        const ChainSpec nor_only(make_graph(GraphKind::Cycle, 3), RuleSet(OpSet{0x8}));
        CHECK_THROWS_AS(absorption_probabilities(nor_only, st("010")), domain_error);
        const ChainSpec big(make_graph(GraphKind::Line, 17), RuleSet(families::PST));
        CHECK_THROWS_AS(absorption_probabilities(big, NetworkState{1}), capacity_error);
    }
}

TEST_CASE("caps and preconditions") {
    CHECK_THROWS_AS(analyze(ChainSpec(make_graph(GraphKind::Line, 25), RuleSet(families::PST))), capacity_error);
    CHECK_THROWS_AS(ChainSpec(Graph(4, {{0, 1}, {2, 3}}), RuleSet(families::PST)), precondition_error);
    CHECK_THROWS_AS(ChainSpec(make_graph(GraphKind::Line, 3), RuleSet(families::PST), {0.5, 0.4}),
                    precondition_error);
    CHECK_THROWS_AS(ChainSpec(make_graph(GraphKind::Line, 3), RuleSet(families::PST), {1.0}), precondition_error);
}

TEST_CASE("chain exports") {
    const ChainSpec spec(parse_edge_list("1 2\n2 3\n3 1\n3 4\n"), RuleSet(families::PST));
    const auto a = analyze(spec);
    const auto dot = export_dot(spec, a);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"0110\"") != std::string::npos);
    std::set<std::string> colors;
    for (std::size_t pos = dot.find("fillcolor=\""); pos != std::string::npos;
         pos = dot.find("fillcolor=\"", pos + 1)) {
        const auto start = pos + 11;
        colors.insert(dot.substr(start, dot.find('"', start) - start));
    }
    CHECK(colors.size() == a.class_count);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK_THROWS_AS(export_dot(ChainSpec(make_graph(GraphKind::Line, 9), RuleSet(families::PST)),
                               analyze(ChainSpec(make_graph(GraphKind::Line, 9), RuleSet(families::PST)))),
                    capacity_error);

    const auto csv = transitions_csv(ChainSpec(make_graph(GraphKind::Line, 2), RuleSet(OpSet{1})));
    CHECK(csv.rfind("source,target,prob\n", 0) == 0);
    CHECK(csv.find("01,00,1") != std::string::npos);
}
