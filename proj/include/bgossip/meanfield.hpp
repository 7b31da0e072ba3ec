#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bgossip {

struct MeanFieldParams {
    int n = 0;
    // Per-draw probability of OR.
    double p_star = 0.5;
    double delta0 = 0.5;
};

enum class TrajectoryKind { MeanFieldClosed, MeanFieldRecursion, Empirical };

std::string_view to_string(TrajectoryKind kind);

struct DensitySample {
    std::int64_t t = 0;
    double density = 0.0;
};

struct DensityTrajectory {
    std::vector<DensitySample> samples;
    TrajectoryKind kind = TrajectoryKind::Empirical;
};

// Logistic closed form delta0 / ((1 - delta0) e^{2(1-2p)t/n} + delta0), t in gossip steps.
double closed_form(const MeanFieldParams& params, double t);

// Expected-drift recursion, one gossip step at a time.
DensityTrajectory recursion(const MeanFieldParams& params, std::int64_t horizon, std::int64_t sample_every = 1);

// Closed form sampled at the same grid as recursion().
DensityTrajectory closed_form_trajectory(const MeanFieldParams& params, std::int64_t horizon,
                                         std::int64_t sample_every = 1);

// "t,density,kind" rows with header.
std::string to_csv(const DensityTrajectory& trajectory, bool header = true);

// Largest |a(t) - b(t)| over the sample times present in both.
double sup_difference(const DensityTrajectory& a, const DensityTrajectory& b);

}  // namespace bgossip
