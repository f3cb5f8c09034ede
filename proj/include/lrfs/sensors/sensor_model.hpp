#pragma once

#include "lrfs/gm/gaussian.hpp"
#include "lrfs/rfs/label.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace lrfs::sensors {

/// State layout used throughout: [p_x, v_x, p_y, v_y].
inline constexpr Eigen::Index kStateDim = 4;

enum class SensorKind {
    Toa,        // range to the sensor, m
    Doa,        // bearing atan2(p_y − y, p_x − x), rad in (−π, π]
    PositionX,  // h(x) = p_x; a linear surrogate used for testing
};

[[nodiscard]] std::string to_string(SensorKind k);
/// Parses "toa" / "doa" (case-insensitive); throws ValidationError otherwise.
[[nodiscard]] SensorKind sensor_kind_from_string(const std::string& s);

/// Interval of admissible measurement values. Bearings live on (−π, π].
struct MeasurementSpace {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double volume() const { return hi - lo; }
    [[nodiscard]] bool contains(double z) const { return z >= lo && z <= hi; }
};

using DetectionFunction = std::function<double(const gm::Vector&, const rfs::Label&)>;

struct SensorModel {
    SensorKind kind = SensorKind::Toa;
    double x = 0.0;
    double y = 0.0;
    double noise_std = 1.0;
    double clutter_rate = 0.0;  // mean clutter count per scan
    double detection_prob = 1.0;
    /// Optional state/label dependent P_D; overrides `detection_prob` when set.
    DetectionFunction detection_fn;
    MeasurementSpace space;

    [[nodiscard]] double detection(const gm::Vector& state, const rfs::Label& label) const {
        return detection_fn ? detection_fn(state, label) : detection_prob;
    }
    [[nodiscard]] bool is_angular() const { return kind == SensorKind::Doa; }

    /// Throws ValidationError if noise_std ≤ 0, clutter_rate < 0, P_D ∉ [0,1]
    /// or the space is empty.
    void validate() const;

    [[nodiscard]] static SensorModel toa(double x, double y, double noise_std, double clutter_rate,
                                         double detection_prob, double r_max);
    [[nodiscard]] static SensorModel doa(double x, double y, double noise_std, double clutter_rate,
                                         double detection_prob);
    [[nodiscard]] static SensorModel position_x(double noise_std, double clutter_rate, double detection_prob,
                                                MeasurementSpace space);
};

/// Wraps an angle into (−π, π].
[[nodiscard]] double wrap_angle(double a);

/// Noise-free measurement h(state). Throws UndefinedAngleError for a bearing
/// requested at the sensor position.
[[nodiscard]] double measure(const SensorModel& sensor, const gm::Vector& state);

/// z − ẑ, wrapped for bearings.
[[nodiscard]] double residual(const SensorModel& sensor, double z, double z_hat);

/// κ(z) = λ_c / |space| inside the measurement space, 0 outside.
[[nodiscard]] double clutter_intensity(const SensorModel& sensor, double z);

struct TruthPoint {
    rfs::Label label;
    gm::Vector state;
};

/// Detected objects (P_D, additive Gaussian noise) followed by Poisson clutter
/// drawn uniformly over the measurement space.
[[nodiscard]] std::vector<double> simulate_measurements(const std::vector<TruthPoint>& truth,
                                                        const SensorModel& sensor, std::mt19937_64& rng);

}  // namespace lrfs::sensors
