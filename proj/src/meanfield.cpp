#include "bgossip/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bgossip/errors.hpp"

namespace bgossip {

namespace {

void validate(const MeanFieldParams& params) {
    if (params.n < 1) throw precondition_error("mean-field n must be positive");
    if (!(params.p_star >= 0.0 && params.p_star <= 1.0)) throw precondition_error("p_star must lie in [0,1]");
    if (!(params.delta0 >= 0.0 && params.delta0 <= 1.0)) throw precondition_error("delta0 must lie in [0,1]");
}

void check_grid(std::int64_t horizon, std::int64_t sample_every) {
    if (horizon < 0) throw precondition_error("horizon must be non-negative");
    if (sample_every < 1) throw precondition_error("sample interval must be positive");
}

bool on_grid(std::int64_t t, std::int64_t horizon, std::int64_t every) { return t % every == 0 || t == horizon; }

}  // namespace

std::string_view to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::MeanFieldClosed: return "meanfield_closed";
        case TrajectoryKind::MeanFieldRecursion: return "meanfield_recursion";
        case TrajectoryKind::Empirical: return "empirical";
    }
    return "?";
}

double closed_form(const MeanFieldParams& params, double t) {
    validate(params);
    const double d0 = params.delta0;
    const double growth = std::exp(2.0 * (1.0 - 2.0 * params.p_star) * t / params.n);
    if (std::isinf(growth)) return d0 == 1.0 ? 1.0 : 0.0;
    return d0 / ((1.0 - d0) * growth + d0);
}

DensityTrajectory recursion(const MeanFieldParams& params, std::int64_t horizon, std::int64_t sample_every) {
    validate(params);
    check_grid(horizon, sample_every);
    DensityTrajectory out{{}, TrajectoryKind::MeanFieldRecursion};
    const double drift = (2.0 / params.n) * (params.p_star * params.p_star - (1.0 - params.p_star) * (1.0 - params.p_star));
    double delta = params.delta0;
    for (std::int64_t t = 0;; ++t) {
        if (on_grid(t, horizon, sample_every)) out.samples.push_back({t, delta});
        if (t == horizon) break;
        delta += drift * delta * (1.0 - delta);
        if (delta < 0.0 && delta > -1e-12) delta = 0.0;
        if (delta > 1.0 && delta < 1.0 + 1e-12) delta = 1.0;
    }
    return out;
}

DensityTrajectory closed_form_trajectory(const MeanFieldParams& params, std::int64_t horizon,
                                         std::int64_t sample_every) {
    check_grid(horizon, sample_every);
    DensityTrajectory out{{}, TrajectoryKind::MeanFieldClosed};
    for (std::int64_t t = 0; t <= horizon; ++t)
        if (on_grid(t, horizon, sample_every)) out.samples.push_back({t, closed_form(params, static_cast<double>(t))});
    return out;
}

std::string to_csv(const DensityTrajectory& trajectory, bool header) {
    std::ostringstream out;
    out.precision(10);
    if (header) out << "t,density,kind\n";
    for (const auto& [t, d] : trajectory.samples) out << t << ',' << d << ',' << to_string(trajectory.kind) << '\n';
    return out.str();
}

double sup_difference(const DensityTrajectory& a, const DensityTrajectory& b) {
    double worst = 0.0;
    auto it = b.samples.begin();
    for (const auto& s : a.samples) {
        it = std::lower_bound(it, b.samples.end(), s.t, [](const DensitySample& x, std::int64_t t) { return x.t < t; });
        if (it == b.samples.end()) break;
        if (it->t == s.t) worst = std::max(worst, std::abs(it->density - s.density));
    }
    return worst;
}

}  // namespace bgossip
