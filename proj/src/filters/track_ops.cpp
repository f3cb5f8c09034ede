#include "lrfs/filters/track_ops.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/sensors/unscented.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lrfs::filters {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

}  // namespace

PredictedTrack predict_track(const gm::GaussianMixture& pdf, const rfs::Label& label, const MotionModel& motion,
                             const sensors::UtParams& ut) {
    gm::GaussianMixture out;
    out.reserve(pdf.size());
    const double total = pdf.log_total_weight();
    std::vector<double> log_w;
    log_w.reserve(pdf.size());
    for (const auto& c : pdf.components()) {
        double ps = motion.survival_prob;
        if (motion.survival_fn) {
            ps = sensors::unscented_expectation(c.gaussian, ut, [&](const gm::Vector& x) {
                return motion.survival_fn(x, label);
            });
            ps = std::clamp(ps, 0.0, 1.0);
        }
        const double lw = c.log_weight - total + safe_log(ps);
        log_w.push_back(lw);
        out.add(lw, motion.predict(c.gaussian));
    }
    const double log_survival = gm::log_sum_exp(log_w);
    PredictedTrack pt;
    pt.survival = std::exp(log_survival);
    if (log_survival == kNegInf) {
        // No mass survives; keep the unweighted prediction so the density stays valid.
        gm::GaussianMixture fallback;
        for (const auto& c : pdf.components()) fallback.add(c.log_weight, motion.predict(c.gaussian));
        fallback.normalize();
        pt.pdf = gm::make_pdf(std::move(fallback));
        return pt;
    }
    out.normalize();
    pt.pdf = gm::make_pdf(std::move(out));
    return pt;
}

PsiRow compute_psi_row(const gm::PdfPtr& pdf_ptr, const rfs::Label& label, std::span<const double> Z,
                       const sensors::SensorModel& sensor, const FilterConfig& cfg) {
    const gm::GaussianMixture& pdf = *pdf_ptr;
    const std::size_t m = Z.size();
    const std::size_t nc = pdf.size();
    const double total = pdf.log_total_weight();

    PsiRow row;
    row.log_psi.assign(m + 1, kNegInf);
    row.pdf.assign(m + 1, nullptr);

    std::vector<double> log_pd(nc), log_qd(nc), log_alpha(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        const auto& c = pdf[j];
        const double pd = std::clamp(sensor.detection(c.gaussian.mean, label), 0.0, 1.0);
        log_alpha[j] = c.log_weight - total;
        log_pd[j] = safe_log(pd);
        log_qd[j] = safe_log(1.0 - pd);
    }

    // misdetection; with P_D equal across components the density is unchanged
    const bool uniform_pd = std::all_of(log_qd.begin(), log_qd.end(), [&](double v) { return v == log_qd[0]; });
    if (uniform_pd) {
        row.log_psi[0] = nc > 0 ? log_qd[0] : kNegInf;
        if (row.log_psi[0] != kNegInf) row.pdf[0] = pdf_ptr;
    } else {
        gm::GaussianMixture miss;
        std::vector<double> lw;
        for (std::size_t j = 0; j < nc; ++j) {
            const double w = log_alpha[j] + log_qd[j];
            if (w == kNegInf) continue;
            lw.push_back(w);
            miss.add(w, pdf[j].gaussian);
        }
        if (!lw.empty()) {
            row.log_psi[0] = gm::log_sum_exp(lw);
            miss.normalize();
            row.pdf[0] = gm::make_pdf(std::move(miss));
        }
    }
    if (m == 0) return row;

    std::vector<double> log_kappa(m);
    for (std::size_t i = 0; i < m; ++i) {
        log_kappa[i] = std::log(std::max(sensors::clutter_intensity(sensor, Z[i]), cfg.clutter_floor));
    }

    std::vector<std::vector<gm::Component>> updated(m);
    for (std::size_t j = 0; j < nc; ++j) {
        if (log_pd[j] == kNegInf) continue;
        const auto pm = sensors::predict_measurement(pdf[j].gaussian, sensor, cfg.ut);
        if (!pm) {
            ++row.dropped_components;
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double nu = sensors::residual(sensor, Z[i], pm->z_hat);
            if (nu * nu / pm->s > cfg.gate) continue;
            auto up = sensors::apply_measurement(*pm, Z[i], sensor);
            if (!up) {
                ++row.dropped_components;
                continue;
            }
            const double w = log_alpha[j] + log_pd[j] + up->log_likelihood - log_kappa[i];
            if (!std::isfinite(w)) continue;
            updated[i].push_back(gm::Component{w, std::move(up->posterior)});
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (updated[i].empty()) continue;
        gm::GaussianMixture post(std::move(updated[i]));
        row.log_psi[i + 1] = post.normalize();
        row.pdf[i + 1] = gm::make_pdf(std::move(post));
    }
    return row;
}

PsiValue psi_bar(const gm::PdfPtr& pdf, const rfs::Label& label, std::size_t z_index,
                 std::span<const double> Z, const sensors::SensorModel& sensor, const FilterConfig& cfg) {
    if (z_index > Z.size()) throw ValidationError("measurement index out of range");
    PsiRow row = compute_psi_row(pdf, label, Z, sensor, cfg);
    return {row.log_psi[z_index], row.pdf[z_index]};
}

}  // namespace lrfs::filters
