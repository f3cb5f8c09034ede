#include "lrfs/sensors/sensor_model.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace lrfs::sensors {

std::string to_string(SensorKind k) {
    switch (k) {
        case SensorKind::Toa: return "toa";
        case SensorKind::Doa: return "doa";
        case SensorKind::PositionX: return "position_x";
    }
    return "?";
}

SensorKind sensor_kind_from_string(const std::string& s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "toa") return SensorKind::Toa;
    if (lower == "doa") return SensorKind::Doa;
    throw ValidationError("unknown sensor kind '" + s + "' (expected toa or doa)");
}

void SensorModel::validate() const {
    if (!(noise_std > 0.0)) throw ValidationError("sensor noise_std must be positive");
    if (!(clutter_rate >= 0.0)) throw ValidationError("sensor clutter_rate must be non-negative");
    if (!(detection_prob >= 0.0 && detection_prob <= 1.0)) throw ValidationError("sensor P_D must lie in [0,1]");
    if (!(space.volume() > 0.0)) throw ValidationError("sensor measurement space is empty");
}

SensorModel SensorModel::toa(double x, double y, double noise_std, double clutter_rate, double detection_prob,
                             double r_max) {
    SensorModel s{SensorKind::Toa, x, y, noise_std, clutter_rate, detection_prob, {}, {0.0, r_max}};
    s.validate();
    return s;
}

SensorModel SensorModel::doa(double x, double y, double noise_std, double clutter_rate, double detection_prob) {
    SensorModel s{SensorKind::Doa, x, y, noise_std, clutter_rate, detection_prob, {},
                  {-std::numbers::pi, std::numbers::pi}};
    s.validate();
    return s;
}

SensorModel SensorModel::position_x(double noise_std, double clutter_rate, double detection_prob,
                                    MeasurementSpace space) {
    SensorModel s{SensorKind::PositionX, 0.0, 0.0, noise_std, clutter_rate, detection_prob, {}, space};
    s.validate();
    return s;
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(a + std::numbers::pi, two_pi);
    if (w < 0.0) w += two_pi;
    w -= std::numbers::pi;
    // fmod maps +π to −π; the interval is closed at +π
    return w == -std::numbers::pi ? std::numbers::pi : w;
}

double measure(const SensorModel& sensor, const gm::Vector& state) {
    const double dx = state(0) - sensor.x;
    const double dy = state(2) - sensor.y;
    switch (sensor.kind) {
        case SensorKind::Toa: return std::hypot(dx, dy);
        case SensorKind::Doa:
            if (dx == 0.0 && dy == 0.0) throw UndefinedAngleError("bearing undefined at the sensor position");
            return std::atan2(dy, dx);
        case SensorKind::PositionX: return state(0);
    }
    return 0.0;
}

double residual(const SensorModel& sensor, double z, double z_hat) {
    return sensor.is_angular() ? wrap_angle(z - z_hat) : z - z_hat;
}

double clutter_intensity(const SensorModel& sensor, double z) {
    return sensor.space.contains(z) ? sensor.clutter_rate / sensor.space.volume() : 0.0;
}

std::vector<double> simulate_measurements(const std::vector<TruthPoint>& truth, const SensorModel& sensor,
                                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, sensor.noise_std);
    std::vector<double> z;
    for (const auto& t : truth) {
        const double pd = sensor.detection(t.state, t.label);
        if (!(unit(rng) < pd)) continue;
        double value = measure(sensor, t.state) + noise(rng);
        if (sensor.is_angular()) value = wrap_angle(value);
        z.push_back(value);
    }
    if (sensor.clutter_rate > 0.0) {
        std::poisson_distribution<int> count(sensor.clutter_rate);
        std::uniform_real_distribution<double> where(sensor.space.lo, sensor.space.hi);
        const int n = count(rng);
        for (int i = 0; i < n; ++i) z.push_back(where(rng));
    }
    return z;
}

}  // namespace lrfs::sensors
