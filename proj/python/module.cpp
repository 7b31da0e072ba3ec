#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bgossip/absorbing.hpp"
#include "bgossip/chain.hpp"
#include "bgossip/errors.hpp"
#include "bgossip/graph.hpp"
#include "bgossip/meanfield.hpp"
#include "bgossip/montecarlo.hpp"
#include "bgossip/positive.hpp"
#include "bgossip/rules.hpp"

namespace py = pybind11;
using namespace bgossip;

namespace {

// Rule sets arrive either as "2,B" or as a list of operator indices.
std::vector<BooleanOp> to_ops(const py::object& rules) {
    if (py::isinstance<py::str>(rules)) return parse_ops(rules.cast<std::string>());
    std::vector<BooleanOp> out;
    for (int k : rules.cast<std::vector<int>>()) {
        if (k < 0 || k > 15) throw parse_error("operator index out of range");
        out.emplace_back(k);
    }
    return out;
}

RuleSet to_rules(const py::object& rules, const std::optional<std::vector<double>>& probs) {
    auto ops = to_ops(rules);
    if (!probs) return RuleSet(std::move(ops));
    return RuleSet(std::move(ops), *probs);
}

OpSet to_set(const py::object& rules) {
    OpSet set;
    for (auto op : to_ops(rules)) set = OpSet(static_cast<std::uint16_t>(set.mask() | (1u << op.index())));
    return set;
}

Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a - 1, b - 1});
    return Graph(n, std::move(edges));
}

std::vector<std::pair<int, int>> pairs_of(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : g.edges()) out.emplace_back(e.u + 1, e.v + 1);
    return out;
}

GraphKind kind_of(const std::string& name) {
    if (name == "line") return GraphKind::Line;
    if (name == "cycle") return GraphKind::Cycle;
    if (name == "star") return GraphKind::Star;
    if (name == "complete") return GraphKind::Complete;
    if (name == "regular") return GraphKind::Regular;
    throw parse_error("unknown graph kind '" + name + "'");
}

std::vector<std::pair<std::int64_t, double>> samples_of(const DensityTrajectory& t) {
    std::vector<std::pair<std::int64_t, double>> out;
    for (const auto& s : t.samples) out.emplace_back(s.t, s.density);
    return out;
}

}  // namespace

PYBIND11_MODULE(_bgossip, m) {
    m.doc() = "Boolean gossip chains: communication classes, absorption, mean field, Monte Carlo";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<construction_error>(m, "ConstructionError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"),
             "Graph on nodes 1..n from 1-indexed edge pairs.")
        .def_property_readonly("n", &Graph::node_count)
        .def_property_readonly("edges", &pairs_of)
        .def("to_edge_list", &serialize_edge_list)
        .def("to_dot", [](const Graph& g) { return export_dot(g); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<GraphShape>(m, "GraphShape")
        .def_property_readonly("tag", [](const GraphShape& s) { return std::string(to_string(s.tag)); })
        .def_readonly("connected", &GraphShape::connected)
        .def_readonly("has_odd_cycle", &GraphShape::has_odd_cycle);

    m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text); });
    m.def("make_graph",
          [](const std::string& kind, int n, int degree, std::uint64_t seed) {
              return make_graph(kind_of(kind), n, degree, seed);
          },
          py::arg("kind"), py::arg("n"), py::arg("degree") = 0, py::arg("seed") = 0);
    m.def("classify_shape", &classify_shape);

    m.def("eval_op", [](int index, int a, int b) { return BooleanOp(index).eval(a, b); });
    m.def("is_member", [](const py::object& rules, const std::string& family) {
        for (auto f : {RuleFamily::PST, RuleFamily::COND_I, RuleFamily::COND_II, RuleFamily::FROZEN_23AB,
                       RuleFamily::B1, RuleFamily::B2, RuleFamily::B})
            if (to_string(f) == family) return is_member(to_set(rules), f);
        throw parse_error("unknown rule family '" + family + "'");
    });
    m.def("all_rule_sets_count", [] {
        std::int64_t count = 0;
        for ([[maybe_unused]] auto ops : all_rule_sets()) ++count;
        return count;
    });

    m.def("step_pair",
          [](const std::string& state, std::pair<int, int> edge, int op_i, int op_j) {
              const int n = static_cast<int>(state.size());
              auto [i, j] = edge;
              if (i > j) {
                  std::swap(i, j);
                  std::swap(op_i, op_j);
              }
              if (i < 1 || j > n || i == j) throw parse_error("edge does not fit the state");
              return to_bitstring(step_pair(parse_bitstring(state, n), {i - 1, j - 1}, BooleanOp(op_i), BooleanOp(op_j)), n);
          });

    m.def("transition_row",
          [](const Graph& g, const py::object& rules, const std::string& state,
             std::optional<std::vector<double>> probs) {
              const ChainSpec spec(g, to_rules(rules, probs));
              const int n = g.node_count();
              std::vector<std::pair<std::string, double>> out;
              for (const auto& [t, p] : transition_row(spec, parse_bitstring(state, n)).targets)
                  out.emplace_back(to_bitstring(t, n), p);
              return out;
          },
          py::arg("graph"), py::arg("rules"), py::arg("state"), py::arg("probs") = py::none());

    m.def("analyze",
          [](const Graph& g, const py::object& rules, std::optional<std::vector<double>> probs) {
              const ChainSpec spec(g, to_rules(rules, probs));
              const auto a = analyze(spec);
              const int n = g.node_count();
              py::dict out;
              out["class_count"] = a.class_count;
              out["is_absorbing_chain"] = a.is_absorbing_chain;
              std::vector<std::string> absorbing;
              for (auto s : a.absorbing_states) absorbing.push_back(to_bitstring(s, n));
              out["absorbing_states"] = absorbing;
              std::vector<std::vector<std::string>> classes;
              for (const auto& members : class_members(a)) {
                  auto& c = classes.emplace_back();
                  for (auto s : members) c.push_back(to_bitstring(s, n));
              }
              out["classes"] = classes;
              return out;
          },
          py::arg("graph"), py::arg("rules"), py::arg("probs") = py::none());

    m.def("absorption_probabilities",
          [](const Graph& g, const py::object& rules, const std::string& start,
             std::optional<std::vector<double>> probs) {
              const ChainSpec spec(g, to_rules(rules, probs));
              const int n = g.node_count();
              std::map<std::string, double> out;
              for (const auto& [s, p] : absorption_probabilities(spec, parse_bitstring(start, n)).probabilities)
                  out[to_bitstring(s, n)] = p;
              return out;
          },
          py::arg("graph"), py::arg("rules"), py::arg("start"), py::arg("probs") = py::none());

    m.def("classify_state", [](const Graph& g, const std::string& state) {
        return std::string(to_string(classify_state(g, parse_bitstring(state, g.node_count()))));
    });
    m.def("is_absorbing_state", [](const Graph& g, const std::string& state, const py::object& rules) {
        return is_absorbing_state(g, parse_bitstring(state, g.node_count()), to_set(rules));
    });
    m.def("is_absorbing_chain_oracle",
          [](const Graph& g, const py::object& rules) { return is_absorbing_chain_oracle(g, to_set(rules)); });

    m.def("predict_chi", &predict_chi);
    m.def("predict_classes", [](const Graph& g) {
        const auto prediction = predict_classes(g);
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (std::size_t c = 0; c < prediction.classes.size(); ++c) {
            auto& [label, states] = out.emplace_back(prediction.labels[c], std::vector<std::string>{});
            for (auto s : prediction.classes[c]) states.push_back(to_bitstring(s, g.node_count()));
        }
        return out;
    });
    m.def("l_reduce", [](const std::string& state) {
        const int n = static_cast<int>(state.size());
        return l_reduce(parse_bitstring(state, n), n).to_string();
    });
    m.def("k_reduce", [](const std::string& state) {
        const int n = static_cast<int>(state.size());
        return k_reduce(parse_bitstring(state, n), n).to_string();
    });
    m.def("consensus_value_positive", [](const Graph& g, double p_star, const std::string& start) {
        return consensus_value_positive(ChainSpec(g, positive_rules(p_star)), parse_bitstring(start, g.node_count()));
    });

    m.def("closed_form",
          [](int n, double p_star, double delta0, double t) { return closed_form({n, p_star, delta0}, t); },
          py::arg("n"), py::arg("p_star"), py::arg("delta0"), py::arg("t"));
    m.def("meanfield_recursion",
          [](int n, double p_star, double delta0, std::int64_t horizon, std::int64_t every) {
              return samples_of(recursion({n, p_star, delta0}, horizon, every));
          },
          py::arg("n"), py::arg("p_star"), py::arg("delta0"), py::arg("horizon"), py::arg("every") = 1);

    m.def("simulate",
          [](const Graph& g, const py::object& rules, std::int64_t horizon, std::int64_t rounds, std::uint64_t seed,
             std::optional<std::vector<double>> probs, std::optional<std::string> start, double delta0,
             std::int64_t every, int threads) {
              StartRule rule = BernoulliStart{delta0};
              if (start) rule = parse_bitstring(*start, g.node_count());
              const SimConfig config{ChainSpec(g, to_rules(rules, probs)), rule, horizon, rounds, seed, every, threads};
              SimResult result;
              {
                  py::gil_scoped_release release;
                  result = run(config);
              }
              py::dict out;
              out["density"] = samples_of(result.density_mean);
              out["absorption_counts"] = result.absorption_counts;
              out["consensus_fraction"] = result.consensus_fraction;
              out["seed"] = result.seed;
              return out;
          },
          py::arg("graph"), py::arg("rules"), py::arg("horizon"), py::arg("rounds"), py::arg("seed"),
          py::arg("probs") = py::none(), py::arg("start") = py::none(), py::arg("delta0") = 0.5, py::arg("every") = 0,
          py::arg("threads") = 1);
}
