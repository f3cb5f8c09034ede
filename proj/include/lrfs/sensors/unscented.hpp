#pragma once

#include "lrfs/gm/gaussian.hpp"
#include "lrfs/sensors/sensor_model.hpp"

#include <optional>

namespace lrfs::sensors {

/// Scaled unscented transform parameters; λ = α²(d + κ) − d.
struct UtParams {
    double alpha = 1.0;
    double beta = 2.0;
    /// Defaults to 3 − d when unset.
    std::optional<double> kappa;
};

/// Sigma points of N(m, P) with their mean and covariance weights.
struct SigmaPoints {
    gm::Matrix points;  // d × (2d+1), centre first
    gm::Vector wm;
    gm::Vector wc;
};

/// Returns nullopt if P admits no Cholesky factor or (d + λ) ≤ 0.
[[nodiscard]] std::optional<SigmaPoints> sigma_points(const gm::Gaussian& g, const UtParams& ut);

/// Unscented predicted measurement of one prior component. Everything that
/// does not depend on the measurement value is computed here once.
struct PredictedMeasurement {
    const gm::Gaussian* prior = nullptr;
    double z_hat = 0.0;       // predicted measurement (circular mean for bearings)
    double s = 0.0;           // innovation variance, noise included
    gm::Vector cross;         // state–measurement cross covariance
};

[[nodiscard]] std::optional<PredictedMeasurement> predict_measurement(const gm::Gaussian& prior,
                                                                      const SensorModel& sensor,
                                                                      const UtParams& ut);

struct UpdateResult {
    gm::Gaussian posterior;
    double log_likelihood = 0.0;  // log N(residual; 0, s)
};

/// Kalman correction with measurement z. Returns nullopt if the posterior
/// covariance loses positive definiteness.
[[nodiscard]] std::optional<UpdateResult> apply_measurement(const PredictedMeasurement& pm, double z,
                                                            const SensorModel& sensor);

/// Full unscented measurement update. Throws NotPositiveDefiniteError when the
/// innovation variance or posterior covariance is not positive.
[[nodiscard]] UpdateResult unscented_update(const gm::Gaussian& prior, double z, const SensorModel& sensor,
                                            const UtParams& ut = {});

/// Unscented estimate of E[f(x)] under g; falls back to f(mean) when no sigma
/// points exist.
template <typename F>
[[nodiscard]] double unscented_expectation(const gm::Gaussian& g, const UtParams& ut, F&& f) {
    const auto sp = sigma_points(g, ut);
    if (!sp) return f(g.mean);
    double e = 0.0;
    for (Eigen::Index i = 0; i < sp->points.cols(); ++i) e += sp->wm(i) * f(gm::Vector(sp->points.col(i)));
    return e;
}

}  // namespace lrfs::sensors
