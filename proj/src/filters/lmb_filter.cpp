#include "lrfs/filters/lmb_filter.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/filters/track_ops.hpp"
#include "lrfs/rfs/operations.hpp"

#include <algorithm>

namespace lrfs::filters {

rfs::LmbDensity lmb_predict(const rfs::LmbDensity& posterior, const MotionModel& motion, const BirthModel& birth,
                            int k, const FilterConfig& cfg) {
    std::vector<std::pair<rfs::Label, const rfs::Bernoulli*>> entries;
    for (const auto& [l, b] : posterior.entries()) {
        if (l.birth_time >= k) throw ValidationError("posterior already holds labels born at time " + std::to_string(k));
        entries.emplace_back(l, &b);
    }
    std::vector<PredictedTrack> predicted(entries.size());
    parallel_for(entries.size(), cfg.execution, [&](std::size_t i) {
        predicted[i] = predict_track(*entries[i].second->pdf, entries[i].first, motion, cfg.ut);
    });

    rfs::LmbDensity out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const double r = std::clamp(entries[i].second->existence * predicted[i].survival, 0.0, 1.0);
        out.set(entries[i].first, r, predicted[i].pdf);
    }
    for (const auto& b : birth.entries) out.set(rfs::Label{k, b.index}, b.existence, b.pdf);
    return out;
}

rfs::LmbDensity lmb_update(const rfs::LmbDensity& predicted, std::span<const double> Z,
                           const sensors::SensorModel& sensor, const FilterConfig& cfg) {
    const rfs::MdGlmbDensity expanded = rfs::lmb_to_mdglmb(predicted, cfg.lmb_expansion_hypotheses);
    FilterConfig expansion_cfg = cfg;
    expansion_cfg.max_hypotheses = std::max(cfg.max_hypotheses, cfg.lmb_expansion_hypotheses);
    const rfs::DeltaGlmbDensity components = mdglmb_update_components(expanded, Z, sensor, expansion_cfg);

    // Marginalizing over θ keeps every label's existence mass and mixture, so
    // collapsing the marginal equals collapsing the components directly.
    const rfs::MdGlmbDensity marginal = rfs::marginalize(components);
    const rfs::LmbDensity collapsed = rfs::lmb_from_mdglmb(marginal);

    rfs::LmbDensity out;
    for (const auto& [l, b] : collapsed.entries()) {
        if (b.existence >= cfg.existence_prune) out.set(l, b.existence, b.pdf);
    }
    rfs::reduce_track_pdfs(out, cfg.reduction, cfg.execution);
    return out;
}

}  // namespace lrfs::filters
