#pragma once

#include "lrfs/execution.hpp"
#include "lrfs/gm/reduction.hpp"
#include "lrfs/rfs/densities.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lrfs::rfs {

/// ρ(n) = Σ_{|I|=n} w(I), n = 0..max|I|.
[[nodiscard]] std::vector<double> cardinality_distribution(const MdGlmbDensity& d);

/// Distribution of a sum of independent Bernoullis, by sequential convolution.
[[nodiscard]] std::vector<double> cardinality_distribution(const LmbDensity& d);

[[nodiscard]] double expected_cardinality(const std::vector<double>& pmf);

struct LabelIntensity {
    double existence_mass = 0.0;  // Σ_{I∋ℓ} w(I)
    gm::GaussianMixture pdf;      // normalized Σ_{I∋ℓ} w(I) p(·,ℓ;I); empty if mass is zero
};

/// Per-label contribution to the intensity of an Mδ-GLMB.
[[nodiscard]] LabelIntensity intensity(const MdGlmbDensity& d, const Label& ell);

/// Sums each label set's weight over association histories and mixes the
/// per-label pdfs accordingly. The input need not be normalized; the output is.
[[nodiscard]] MdGlmbDensity marginalize(const DeltaGlmbDensity& d);

/// LMB with the same per-label existence mass and pdf (matching first moment).
[[nodiscard]] LmbDensity lmb_from_mdglmb(const MdGlmbDensity& d);

/// Expands an LMB into label-set hypotheses. With `max_hypotheses` only the
/// most probable subsets are kept, then renormalized. Entries with r = 0 never
/// appear in a hypothesis.
[[nodiscard]] MdGlmbDensity lmb_to_mdglmb(const LmbDensity& d,
                                          std::optional<std::size_t> max_hypotheses = std::nullopt);

/// Applies mixture reduction to every distinct multi-component track pdf once;
/// pdfs shared between hypotheses stay shared.
void reduce_track_pdfs(MdGlmbDensity& d, const gm::ReductionParams& params, Execution exec = Execution::Parallel);
void reduce_track_pdfs(LmbDensity& d, const gm::ReductionParams& params, Execution exec = Execution::Parallel);

}  // namespace lrfs::rfs
