#pragma once

#include "lrfs/sensors/sensor_model.hpp"
#include "lrfs/sim/scenario.hpp"

#include <vector>

namespace lrfs::sim {

using TruthSet = std::vector<sensors::TruthPoint>;

/// Noise-free state of `t` at `step`, which must lie in [birth_step, death_step).
/// Between steps the position advances by T_s times the velocity in force at
/// the later step.
[[nodiscard]] gm::Vector trajectory_state(const Trajectory& t, int step, double sampling_interval);

/// Truth sets for steps 1 … s.steps (element k−1 holds step k), each ordered
/// as the trajectory list.
[[nodiscard]] std::vector<TruthSet> generate_truth(const Scenario& s);

}  // namespace lrfs::sim
