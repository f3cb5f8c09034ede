#pragma once

#include "lrfs/filters/assignment.hpp"
#include "lrfs/filters/models.hpp"
#include "lrfs/rfs/densities.hpp"
#include "lrfs/sensors/sensor_model.hpp"

#include <span>
#include <vector>

namespace lrfs::filters {

/// Mδ-GLMB prediction to time k.
///
/// Each posterior hypothesis J spawns the realizations of the Bernoulli list
/// {(P̄_S(ℓ), predicted p(·,ℓ;J)) : ℓ ∈ J} ∪ {(r_B, p_B)} of births labeled
/// (k, index). Realizations are drawn across all J in order of decreasing
/// weight w(J)·Π r·Π(1 − r) until `cfg.max_hypotheses` distinct label sets
/// exist or the next candidate falls below `cfg.hypothesis_prune` relative to
/// the first. Candidates sharing a label set are summed and their survivor
/// pdfs mixed with the same weights, then reduced.
[[nodiscard]] rfs::MdGlmbDensity mdglmb_predict(const rfs::MdGlmbDensity& posterior, const MotionModel& motion,
                                                const BirthModel& birth, int k, const FilterConfig& cfg);

/// Association maps of one hypothesis: score(i, j) = log ψ̄ of track i with
/// measurement j < |Z|, score(i, |Z| + i) = misdetection, −∞ elsewhere.
[[nodiscard]] gm::Matrix association_scores(const std::vector<std::vector<double>>& rows);

/// Mδ-GLMB measurement update with one sensor's scan.
///
/// For every hypothesis I the best association maps θ are ranked (or all are
/// enumerated when `cfg.exhaustive_assignments`), each giving the component
/// (I, θ) with log-weight log w(I) + Σ_ℓ log ψ̄(ℓ, θ(ℓ)). These are normalized
/// jointly, marginalized over θ per label set, pruned, reduced and truncated
/// to `cfg.max_hypotheses`.
[[nodiscard]] rfs::MdGlmbDensity mdglmb_update(const rfs::MdGlmbDensity& predicted, std::span<const double> Z,
                                               const sensors::SensorModel& sensor, const FilterConfig& cfg);

/// The intermediate δ-GLMB of mdglmb_update, before marginalization; the
/// history tag of each component is its rank within the hypothesis.
[[nodiscard]] rfs::DeltaGlmbDensity mdglmb_update_components(const rfs::MdGlmbDensity& predicted,
                                                             std::span<const double> Z,
                                                             const sensors::SensorModel& sensor,
                                                             const FilterConfig& cfg);

/// Marginalizes, prunes, reduces per-label mixtures and truncates.
[[nodiscard]] rfs::MdGlmbDensity finalize_update(const rfs::DeltaGlmbDensity& components, const FilterConfig& cfg);

/// One predict followed by sequential updates, one per sensor scan.
[[nodiscard]] rfs::MdGlmbDensity centralized_mdglmb_step(const rfs::MdGlmbDensity& posterior,
                                                         const MotionModel& motion, const BirthModel& birth, int k,
                                                         std::span<const sensors::SensorModel> sensors,
                                                         const std::vector<std::vector<double>>& scans,
                                                         const FilterConfig& cfg);

}  // namespace lrfs::filters
