#pragma once

#include "lrfs/execution.hpp"
#include "lrfs/gm/reduction.hpp"
#include "lrfs/rfs/densities.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace lrfs::fusion {

template <typename Density>
struct WeightedDensity {
    const Density* density = nullptr;
    double weight = 0.0;
};

struct FusionOptions {
    /// Reduce both operands before every pairwise GM fusion.
    std::optional<gm::ReductionParams> pre_merge;
    /// Cap each per-label normalizer η at 1. The exact η = ∫ Π p_i^ω_i never
    /// exceeds 1 (Hölder), but its Gaussian-mixture approximation can: for M
    /// strongly overlapping components it approaches M, which systematically
    /// favours label sets containing diffuse, many-component tracks.
    bool clamp_normalizer = true;
    Execution execution = Execution::Parallel;
};

struct FusionDiagnostics {
    /// Fusions whose hypothesis intersection was empty (or all of whose
    /// common hypotheses had vanishing weight), answered with "no objects".
    std::size_t empty_intersections = 0;
};

/// Kullback-Leibler average of Mδ-GLMB densities.
///
/// Only label sets present in every input survive. For such an L each label's
/// pdf is the GM Chernoff fusion of the inputs' pdfs, and
///   log w̄(L) = Σ_i ω_i log w_i(L) + Σ_{ℓ∈L} log η(ℓ; L)
/// with η the fusion normalizer; the result is renormalized. Inputs with zero
/// weight are ignored, and a single remaining input is returned unchanged.
/// Weights must be non-negative and sum to one within 1e-9.
[[nodiscard]] rfs::MdGlmbDensity fuse_mdglmb(std::span<const WeightedDensity<rfs::MdGlmbDensity>> inputs,
                                             const FusionOptions& options = {},
                                             FusionDiagnostics* diagnostics = nullptr);

/// Kullback-Leibler average of LMB densities. For each label present in every
/// input:
///   q̃ = Π (1 − r_i)^ω_i,  r̃ = η Π r_i^ω_i,  r̄ = r̃ / (q̃ + r̃),
/// and the pdf is the GM Chernoff fusion. A label missing from some input has
/// r̄ = 0 and is dropped, as are labels whose fused existence is zero.
[[nodiscard]] rfs::LmbDensity fuse_lmb(std::span<const WeightedDensity<rfs::LmbDensity>> inputs,
                                       const FusionOptions& options = {});

}  // namespace lrfs::fusion
