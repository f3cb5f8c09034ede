#pragma once

#include "lrfs/filters/models.hpp"
#include "lrfs/sensors/sensor_model.hpp"

#include <span>
#include <vector>

namespace lrfs::filters {

/// Survival-weighted prediction of one track density.
struct PredictedTrack {
    double survival = 1.0;  // P̄_S = ⟨P_S(·,ℓ), p⟩
    gm::PdfPtr pdf;         // normalized P_S p propagated through the motion model
};

/// Constant P_S: closed-form Kalman prediction per component. State-dependent
/// P_S: each component is reweighted by its unscented expectation of P_S.
[[nodiscard]] PredictedTrack predict_track(const gm::GaussianMixture& pdf, const rfs::Label& label,
                                           const MotionModel& motion, const sensors::UtParams& ut);

/// ψ̄ for one track against every measurement of a scan.
/// Index 0 is misdetection; index j ≥ 1 is measurement Z[j−1].
struct PsiRow {
    std::vector<double> log_psi;
    std::vector<gm::PdfPtr> pdf;  // conditioned track density per index; null when log_psi is −∞
    std::size_t dropped_components = 0;
};

/// Misdetection: ψ̄ = ⟨1 − P_D, p⟩ with p reweighted by 1 − P_D.
/// Detection of z: ψ̄ = Σ_j α_j P_D q_j(z) / κ(z) with each component updated
/// by the unscented filter. P_D is evaluated at each component mean, and κ is
/// floored at `cfg.clutter_floor`. Components outside the gate or whose
/// update fails are skipped.
[[nodiscard]] PsiRow compute_psi_row(const gm::PdfPtr& pdf, const rfs::Label& label,
                                     std::span<const double> Z, const sensors::SensorModel& sensor,
                                     const FilterConfig& cfg);

struct PsiValue {
    double log_psi = 0.0;
    gm::PdfPtr pdf;
};

/// Single entry of compute_psi_row; z_index ∈ {0, …, |Z|}.
[[nodiscard]] PsiValue psi_bar(const gm::PdfPtr& pdf, const rfs::Label& label, std::size_t z_index,
                               std::span<const double> Z, const sensors::SensorModel& sensor,
                               const FilterConfig& cfg);

}  // namespace lrfs::filters
