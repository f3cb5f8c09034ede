#include "lrfs/sim/truth.hpp"

#include "lrfs/errors.hpp"

namespace lrfs::sim {

gm::Vector trajectory_state(const Trajectory& t, int step, double sampling_interval) {
    if (step < t.birth_step || step >= t.death_step) {
        throw ValidationError("step " + std::to_string(step) + " outside the trajectory's lifetime");
    }
    gm::Vector x = t.initial_state;
    std::size_t seg = 0;
    for (int k = t.birth_step + 1; k <= step; ++k) {
        while (seg < t.segments.size() && t.segments[seg].step <= k) {
            x(1) = t.segments[seg].vx;
            x(3) = t.segments[seg].vy;
            ++seg;
        }
        x(0) += sampling_interval * x(1);
        x(2) += sampling_interval * x(3);
    }
    return x;
}

std::vector<TruthSet> generate_truth(const Scenario& s) {
    std::vector<TruthSet> truth(static_cast<std::size_t>(std::max(s.steps, 0)));
    for (const auto& t : s.trajectories) {
        // Walk once per trajectory rather than restarting from birth each step.
        gm::Vector x = t.initial_state;
        std::size_t seg = 0;
        for (int k = t.birth_step; k < t.death_step && k <= s.steps; ++k) {
            if (k > t.birth_step) {
                while (seg < t.segments.size() && t.segments[seg].step <= k) {
                    x(1) = t.segments[seg].vx;
                    x(3) = t.segments[seg].vy;
                    ++seg;
                }
                x(0) += s.sampling_interval * x(1);
                x(2) += s.sampling_interval * x(3);
            }
            if (k >= 1) truth[static_cast<std::size_t>(k - 1)].push_back({t.label, x});
        }
    }
    return truth;
}

}  // namespace lrfs::sim
