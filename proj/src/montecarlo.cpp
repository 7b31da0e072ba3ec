#include "bgossip/montecarlo.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "bgossip/errors.hpp"

namespace bgossip {

namespace {

class RoundRunner {
public:
    explicit RoundRunner(const SimConfig& config)
        : config_(config), spec_(config.spec), n_(spec_.node_count()),
          every_(config.sample_every > 0 ? config.sample_every : spec_.node_count()),
          incident_(static_cast<std::size_t>(n_)), edge_frozen_(spec_.graph().edge_count()) {
        if (config.horizon < 1) throw precondition_error("horizon must be at least 1");
        if (config.rounds < 1) throw precondition_error("rounds must be at least 1");
        if (const auto* fixed = std::get_if<NetworkState>(&config.start)) {
            if (n_ > 64 || (n_ < 64 && (fixed->bits >> n_) != 0))
                throw precondition_error("start state does not fit the graph");
        } else {
            const double d0 = std::get<BernoulliStart>(config.start).delta0;
            if (!(d0 >= 0.0 && d0 <= 1.0)) throw precondition_error("delta0 must lie in [0,1]");
        }
        const auto& edges = spec_.graph().edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            incident_[static_cast<std::size_t>(edges[e].u)].push_back(static_cast<std::uint32_t>(e));
            incident_[static_cast<std::size_t>(edges[e].v)].push_back(static_cast<std::uint32_t>(e));
        }
        const auto& w = spec_.edge_weights();
        uniform_edges_ = std::all_of(w.begin(), w.end(), [&](double x) { return x == w.front(); });
        for (std::int64_t t = 0; t <= config.horizon; ++t)
            if (t % every_ == 0 || t == config.horizon) grid_.push_back(t);
    }

    const std::vector<std::int64_t>& grid() const noexcept { return grid_; }
    int node_count() const noexcept { return n_; }

    struct Outcome {
        std::int64_t steps = 0;
        bool absorbed = false;
        int ones = 0;
    };

    // on_sample(grid_index, ones) is called once per grid point.
    template <typename OnSample>
    Outcome run_round(std::int64_t round, std::vector<std::uint8_t>& x, OnSample&& on_sample) {
        std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                          static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32)};
        std::mt19937_64 rng(seq);

        x.assign(static_cast<std::size_t>(n_), 0);
        if (const auto* fixed = std::get_if<NetworkState>(&config_.start)) {
            for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(fixed->get(i));
        } else {
            std::bernoulli_distribution coin(std::get<BernoulliStart>(config_.start).delta0);
            for (auto& v : x) v = coin(rng);
        }

        const auto& edges = spec_.graph().edges();
        const auto& table = spec_.outcomes();
        const auto& ops = spec_.rules().ops();
        int ones = static_cast<int>(std::count(x.begin(), x.end(), 1));
        std::size_t active = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            edge_frozen_[e] = table.frozen(x[static_cast<std::size_t>(edges[e].u)], x[static_cast<std::size_t>(edges[e].v)]);
            active += !edge_frozen_[e];
        }
        auto refresh = [&](int node) {
            for (auto e : incident_[static_cast<std::size_t>(node)]) {
                const bool f = table.frozen(x[static_cast<std::size_t>(edges[e].u)], x[static_cast<std::size_t>(edges[e].v)]);
                if (f != static_cast<bool>(edge_frozen_[e])) {
                    active += f ? -1 : 1;
                    edge_frozen_[e] = f;
                }
            }
        };

        std::uniform_int_distribution<std::size_t> uniform_edge(0, edges.size() - 1);
        std::discrete_distribution<std::size_t> weighted_edge(spec_.edge_weights().begin(), spec_.edge_weights().end());
        std::discrete_distribution<std::size_t> pick_op(spec_.rules().probs().begin(), spec_.rules().probs().end());
        const bool single_op = ops.size() == 1;

        std::size_t next_grid = 0;
        on_sample(next_grid++, ones);
        std::int64_t t = 0;
        for (; t < config_.horizon && active > 0; ++t) {
            const auto e = uniform_edges_ ? uniform_edge(rng) : weighted_edge(rng);
            const auto [u, v] = edges[e];
            const auto op_u = single_op ? ops[0] : ops[pick_op(rng)];
            const auto op_v = single_op ? ops[0] : ops[pick_op(rng)];
            auto& xu = x[static_cast<std::size_t>(u)];
            auto& xv = x[static_cast<std::size_t>(v)];
            const auto nu = static_cast<std::uint8_t>(op_u.eval(xu, xv));
            const auto nv = static_cast<std::uint8_t>(op_v.eval(xv, xu));
            const bool cu = nu != xu;
            const bool cv = nv != xv;
            ones += (nu - xu) + (nv - xv);
            xu = nu;
            xv = nv;
            if (cu) refresh(u);
            if (cv) refresh(v);
            if (next_grid < grid_.size() && grid_[next_grid] == t + 1) on_sample(next_grid++, ones);
        }
        // Absorbed: the state is fixed for the rest of the horizon.
        while (next_grid < grid_.size()) on_sample(next_grid++, ones);
        return {t, active == 0, ones};
    }

private:
    const SimConfig& config_;
    const ChainSpec& spec_;
    int n_;
    std::int64_t every_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<std::uint8_t> edge_frozen_;
    std::vector<std::int64_t> grid_;
    bool uniform_edges_ = true;
};

std::string render(const std::vector<std::uint8_t>& x) {
    std::string s(x.size(), '0');
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) s[i] = '1';
    return s;
}

struct Partial {
    std::vector<std::int64_t> ones_total;
    std::map<std::string, std::int64_t> absorbed;
    std::int64_t consensus = 0;
};

}  // namespace

SimResult run(const SimConfig& config) {
    RoundRunner probe(config);
    const auto grid_size = probe.grid().size();
    const int threads = std::max(1, static_cast<int>(std::min<std::int64_t>(config.threads, config.rounds)));

    std::vector<Partial> partials(static_cast<std::size_t>(threads));
    auto work = [&](int worker) {
        RoundRunner runner(config);
        auto& part = partials[static_cast<std::size_t>(worker)];
        part.ones_total.assign(grid_size, 0);
        std::vector<std::uint8_t> x;
        const std::int64_t begin = config.rounds * worker / threads;
        const std::int64_t end = config.rounds * (worker + 1) / threads;
        for (std::int64_t r = begin; r < end; ++r) {
            const auto outcome = runner.run_round(r, x, [&](std::size_t g, int ones) { part.ones_total[g] += ones; });
            if (outcome.absorbed) ++part.absorbed[render(x)];
            if (outcome.ones == 0 || outcome.ones == runner.node_count()) ++part.consensus;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    SimResult result;
    result.rounds = config.rounds;
    result.seed = config.seed;
    result.density_mean.kind = TrajectoryKind::Empirical;
    std::vector<std::int64_t> totals(grid_size, 0);
    std::int64_t consensus = 0;
    for (const auto& part : partials) {
        for (std::size_t g = 0; g < grid_size; ++g) totals[g] += part.ones_total[g];
        for (const auto& [state, count] : part.absorbed) result.absorption_counts[state] += count;
        consensus += part.consensus;
    }
    const double scale = static_cast<double>(config.rounds) * probe.node_count();
    for (std::size_t g = 0; g < grid_size; ++g)
        result.density_mean.samples.push_back({probe.grid()[g], static_cast<double>(totals[g]) / scale});
    result.consensus_fraction = static_cast<double>(consensus) / static_cast<double>(config.rounds);
    return result;
}

SamplePath sample_path(const SimConfig& config, std::int64_t round) {
    RoundRunner runner(config);
    SamplePath path;
    path.density.kind = TrajectoryKind::Empirical;
    std::vector<std::uint8_t> x;
    const auto outcome = runner.run_round(round, x, [&](std::size_t g, int ones) {
        path.density.samples.push_back({runner.grid()[g], static_cast<double>(ones) / runner.node_count()});
    });
    path.final_state = render(x);
    path.steps = outcome.steps;
    path.absorbed = outcome.absorbed;
    return path;
}

std::string absorption_report(const SimResult& result) {
    std::ostringstream out;
    out << "seed=" << result.seed << "\n";
    out << "rounds=" << result.rounds << "\n";
    out << "consensus_fraction=" << result.consensus_fraction << "\n";
    out << "absorbing_state,count\n";
    for (const auto& [state, count] : result.absorption_counts) out << state << ',' << count << '\n';
    return out.str();
}

}  // namespace bgossip
