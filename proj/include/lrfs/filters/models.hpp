#pragma once

#include "lrfs/execution.hpp"
#include "lrfs/gm/gaussian_mixture.hpp"
#include "lrfs/gm/reduction.hpp"
#include "lrfs/rfs/label.hpp"
#include "lrfs/sensors/unscented.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace lrfs::filters {

using SurvivalFunction = std::function<double(const gm::Vector&, const rfs::Label&)>;

/// Linear-Gaussian motion x' = F x + w, w ~ N(0, Q), with survival probability.
struct MotionModel {
    gm::Matrix F;
    gm::Matrix Q;
    double survival_prob = 0.99;
    /// Optional state/label dependent P_S; overrides `survival_prob` when set.
    SurvivalFunction survival_fn;

    /// Nearly-constant-velocity model on [p_x, v_x, p_y, v_y].
    [[nodiscard]] static MotionModel ncv(double sampling_interval, double sigma_w, double survival_prob);

    /// Throws ValidationError on shape mismatch, non-PSD Q or P_S ∉ [0,1].
    void validate() const;

    [[nodiscard]] gm::Gaussian predict(const gm::Gaussian& g) const;
};

struct BirthEntry {
    int index = 1;  // label (k, index) at birth time k
    double existence = 0.0;
    gm::PdfPtr pdf;
};

/// Labeled multi-Bernoulli birth; labels are (k, index).
struct BirthModel {
    std::vector<BirthEntry> entries;

    /// Throws ValidationError on repeated indices, r ∉ [0,1] or empty pdfs.
    void validate() const;
};

struct FilterConfig {
    /// I_max: hypotheses kept after prediction and after update.
    std::size_t max_hypotheses = 3000;
    /// K: upper bound on association maps per hypothesis.
    std::size_t assignments_per_hypothesis = 100;
    /// When set, hypothesis I receives ⌈K_total · w(I)⌉ maps (at least one,
    /// at most K) with K_total = max_hypotheses; otherwise exactly K.
    bool proportional_assignments = true;
    /// Enumerate every association map instead of ranking (tests only).
    bool exhaustive_assignments = false;

    /// Relative weight below which hypotheses are dropped.
    double hypothesis_prune = 1e-6;
    /// LMB entries with existence below this are dropped after each update.
    double existence_prune = 1e-4;
    /// Hypotheses used when expanding an LMB for its update.
    std::size_t lmb_expansion_hypotheses = 1000;

    gm::ReductionParams reduction;
    sensors::UtParams ut;
    /// Lower bound on the clutter intensity, so that measurements falling just
    /// outside a sensor's nominal space do not yield infinite likelihood ratios.
    double clutter_floor = 1e-12;
    /// Squared normalized innovation beyond which a component is not updated
    /// with a measurement (its contribution to ψ̄ is below e^(−gate/2)).
    double gate = 100.0;

    Execution execution = Execution::Parallel;

    void validate() const;
};

}  // namespace lrfs::filters
