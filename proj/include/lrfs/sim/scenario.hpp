#pragma once

#include "lrfs/filters/models.hpp"
#include "lrfs/fusion/graph.hpp"
#include "lrfs/sensors/sensor_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrfs::sim {

inline constexpr int kSchemaVersion = 1;

struct Area {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    [[nodiscard]] double diagonal() const;
    [[nodiscard]] bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

/// From `step` on, the object moves with `velocity` (m/s).
struct VelocityChange {
    int step = 0;
    double vx = 0.0;
    double vy = 0.0;
};

/// Object present on steps [birth_step, death_step).
struct Trajectory {
    rfs::Label label;
    int birth_step = 1;
    int death_step = 2;
    gm::Vector initial_state;  // [p_x, v_x, p_y, v_y] at birth_step
    std::vector<VelocityChange> segments;
};

struct OspaParams {
    double cutoff = 600.0;
    double order = 2.0;
};

struct Scenario {
    std::string name;
    Area area;
    double sampling_interval = 5.0;
    int steps = 0;  // time steps 1 … steps
    double sigma_w = 5.0;
    filters::MotionModel motion;
    filters::BirthModel birth;
    std::vector<sensors::SensorModel> sensors;  // node i hosts sensor i
    fusion::NetworkGraph graph;
    std::vector<Trajectory> trajectories;
    filters::FilterConfig filter;
    int consensus_steps = 1;
    /// See fusion::FusionOptions::clamp_normalizer.
    bool clamp_fusion_normalizer = true;
    OspaParams ospa;
    int trials = 1;
    std::uint64_t seed = 1;

    /// Re-checks every invariant; throws ValidationError.
    void validate() const;
};

/// Parses and validates a scenario document. Errors name the offending field
/// and its line in the file.
[[nodiscard]] Scenario load_scenario(const std::string& path);
[[nodiscard]] Scenario parse_scenario(const std::string& yaml_text, const std::string& origin = "<string>");

}  // namespace lrfs::sim
