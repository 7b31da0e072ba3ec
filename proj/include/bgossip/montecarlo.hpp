#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "bgossip/chain.hpp"
#include "bgossip/meanfield.hpp"
#include "bgossip/state.hpp"

namespace bgossip {

// Each node starts at 1 independently with probability delta0.
struct BernoulliStart {
    double delta0 = 0.5;
};

using StartRule = std::variant<NetworkState, BernoulliStart>;

struct SimConfig {
    ChainSpec spec;
    StartRule start = BernoulliStart{};
    std::int64_t horizon = 1;
    std::int64_t rounds = 1;
    std::uint64_t seed = 0;
    // Density sampling interval in steps; 0 means every n steps.
    std::int64_t sample_every = 0;
    int threads = 1;
};

struct SimResult {
    DensityTrajectory density_mean;
    // Final state (bit string, node 1 leftmost) of every round that ended absorbed.
    std::map<std::string, std::int64_t> absorption_counts;
    // Rounds ending in all-zeros or all-ones.
    double consensus_fraction = 0.0;
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const SimResult& a, const SimResult& b) {
        if (a.density_mean.samples.size() != b.density_mean.samples.size()) return false;
        for (std::size_t i = 0; i < a.density_mean.samples.size(); ++i) {
            if (a.density_mean.samples[i].t != b.density_mean.samples[i].t ||
                a.density_mean.samples[i].density != b.density_mean.samples[i].density)
                return false;
        }
        return a.absorption_counts == b.absorption_counts && a.consensus_fraction == b.consensus_fraction &&
               a.rounds == b.rounds && a.seed == b.seed;
    }
};

// Per-round trace for inspection; `densities` follows the same grid as SimResult.
struct SamplePath {
    DensityTrajectory density;
    std::string final_state;
    std::int64_t steps = 0;
    bool absorbed = false;
};

SimResult run(const SimConfig& config);

// Replays a single round exactly as run() would.
SamplePath sample_path(const SimConfig& config, std::int64_t round);

// "absorbing_state,count" report plus summary lines.
std::string absorption_report(const SimResult& result);

}  // namespace bgossip
