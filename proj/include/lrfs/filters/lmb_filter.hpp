#pragma once

#include "lrfs/filters/models.hpp"
#include "lrfs/rfs/densities.hpp"
#include "lrfs/sensors/sensor_model.hpp"

#include <span>

namespace lrfs::filters {

/// Survivors get r·P̄_S and the survival-weighted predicted pdf; birth entries
/// are appended with labels (k, index).
[[nodiscard]] rfs::LmbDensity lmb_predict(const rfs::LmbDensity& posterior, const MotionModel& motion,
                                          const BirthModel& birth, int k, const FilterConfig& cfg);

/// Expands the LMB into its `cfg.lmb_expansion_hypotheses` most probable label
/// sets, runs the Mδ-GLMB update components, and collapses the result back to
/// an LMB with r(ℓ) = Σ_{(I,θ) : ℓ∈I} w and the matching mixture. Entries with
/// r below `cfg.existence_prune` are dropped.
[[nodiscard]] rfs::LmbDensity lmb_update(const rfs::LmbDensity& predicted, std::span<const double> Z,
                                         const sensors::SensorModel& sensor, const FilterConfig& cfg);

}  // namespace lrfs::filters
