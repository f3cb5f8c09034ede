#include "lrfs/sensors/unscented.hpp"

#include "lrfs/errors.hpp"

#include <cmath>
#include <numbers>

namespace lrfs::sensors {

std::optional<SigmaPoints> sigma_points(const gm::Gaussian& g, const UtParams& ut) {
    const Eigen::Index d = g.dim();
    const double dd = static_cast<double>(d);
    const double kappa = ut.kappa.value_or(3.0 - dd);
    const double lambda = ut.alpha * ut.alpha * (dd + kappa) - dd;
    const double spread = dd + lambda;
    if (!(spread > 0.0)) return std::nullopt;

    Eigen::LLT<gm::Matrix> llt(spread * g.covariance);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const gm::Matrix L = llt.matrixL();

    SigmaPoints sp;
    sp.points.resize(d, 2 * d + 1);
    sp.wm.resize(2 * d + 1);
    sp.wc.resize(2 * d + 1);
    sp.points.col(0) = g.mean;
    sp.wm(0) = lambda / spread;
    sp.wc(0) = sp.wm(0) + (1.0 - ut.alpha * ut.alpha + ut.beta);
    for (Eigen::Index i = 0; i < d; ++i) {
        sp.points.col(1 + i) = g.mean + L.col(i);
        sp.points.col(1 + d + i) = g.mean - L.col(i);
        sp.wm(1 + i) = sp.wm(1 + d + i) = 0.5 / spread;
        sp.wc(1 + i) = sp.wc(1 + d + i) = 0.5 / spread;
    }
    return sp;
}

std::optional<PredictedMeasurement> predict_measurement(const gm::Gaussian& prior, const SensorModel& sensor,
                                                        const UtParams& ut) {
    const auto sp = sigma_points(prior, ut);
    if (!sp) return std::nullopt;
    const Eigen::Index n = sp->points.cols();

    gm::Vector zs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const gm::Vector col = sp->points.col(i);
        if (sensor.is_angular() && col(0) == sensor.x && col(2) == sensor.y) return std::nullopt;
        zs(i) = measure(sensor, col);
    }

    // Bearings are averaged as deviations from the centre point so the mean
    // does not jump across the ±π cut.
    double z_hat = 0.0;
    if (sensor.is_angular()) {
        double offset = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) offset += sp->wm(i) * wrap_angle(zs(i) - zs(0));
        z_hat = wrap_angle(zs(0) + offset);
    } else {
        z_hat = sp->wm.dot(zs);
    }

    PredictedMeasurement pm;
    pm.prior = &prior;
    pm.z_hat = z_hat;
    pm.s = sensor.noise_std * sensor.noise_std;
    pm.cross = gm::Vector::Zero(prior.dim());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dz = residual(sensor, zs(i), z_hat);
        pm.s += sp->wc(i) * dz * dz;
        pm.cross += sp->wc(i) * dz * (sp->points.col(i) - prior.mean);
    }
    if (!(pm.s > 0.0) || !std::isfinite(pm.s)) return std::nullopt;
    return pm;
}

std::optional<UpdateResult> apply_measurement(const PredictedMeasurement& pm, double z, const SensorModel& sensor) {
    const double nu = residual(sensor, z, pm.z_hat);
    const gm::Vector gain = pm.cross / pm.s;
    gm::Vector mean = pm.prior->mean + gain * nu;
    gm::Matrix cov = pm.prior->covariance - gain * pm.s * gain.transpose();
    cov = gm::symmetrize(cov);
    if (!gm::try_cholesky(cov)) return std::nullopt;
    constexpr double log_2pi = 1.8378770664093454835606594728112;
    const double ll = -0.5 * (log_2pi + std::log(pm.s) + nu * nu / pm.s);
    return UpdateResult{gm::Gaussian::unchecked(std::move(mean), std::move(cov)), ll};
}

UpdateResult unscented_update(const gm::Gaussian& prior, double z, const SensorModel& sensor, const UtParams& ut) {
    const auto pm = predict_measurement(prior, sensor, ut);
    if (!pm) throw NotPositiveDefiniteError("innovation variance is not positive");
    auto out = apply_measurement(*pm, z, sensor);
    if (!out) throw NotPositiveDefiniteError("posterior covariance is not positive definite");
    return std::move(*out);
}

}  // namespace lrfs::sensors
