#pragma once

#include "lrfs/gm/gaussian_mixture.hpp"
#include "lrfs/gm/reduction.hpp"

#include <optional>
#include <span>

namespace lrfs::gm {

/// Covariance intersection: information pairs averaged with weights
/// (omega, 1 - omega). omega = 1 returns `a`, omega = 0 returns `b`.
[[nodiscard]] Gaussian gaussian_ci(const Gaussian& a, const Gaussian& b, double omega);

/// log β(ω, P) = ½ log det(2πP/ω) − (ω/2) log det(2πP), for 0 < ω.
[[nodiscard]] double log_beta(double omega, const Matrix& P);

/// Log of the fused-component coefficient for the pair (a, b):
///   ω log αa + (1−ω) log αb + log β(ω,Pa) + log β(1−ω,Pb)
///   + log N(μa − μb; 0, Pa/ω + Pb/(1−ω)).
/// Throws DegenerateExponentError for ω ∉ (0, 1).
[[nodiscard]] double chernoff_weight(const Gaussian& a, const Gaussian& b, double log_alpha_a,
                                     double log_alpha_b, double omega);

struct ChernoffResult {
    GaussianMixture mixture;      // normalized
    double log_normalizer = 0.0;  // log ∫ pa^ω pb^(1−ω) under the GM approximation
};

/// Pairwise GM Chernoff fusion: every (j, k) component pair is fused by
/// covariance intersection and weighted by `chernoff_weight`.
[[nodiscard]] ChernoffResult gm_chernoff_pair(const GaussianMixture& pa, const GaussianMixture& pb,
                                              double omega);

struct WeightedMixture {
    const GaussianMixture* mixture = nullptr;
    double weight = 0.0;
};

/// Weighted geometric mean of several mixtures by a left fold of pairwise
/// fusions. At step k the running result carries exponent s_{k-1}/s_k and the
/// new input ω_k/s_k (s_k the running weight sum), and the log normalizer
/// follows log Z_k = (s_{k-1}/s_k) log Z_{k-1} + log η_k, so that with weights
/// summing to one Z is the GM approximation of ∫ Π p_i^ω_i. Zero-weight inputs
/// are skipped. When `pre_merge` is set,
/// both operands are reduced with it before every pairwise step.
[[nodiscard]] ChernoffResult gm_chernoff_multi(std::span<const WeightedMixture> inputs,
                                               const std::optional<ReductionParams>& pre_merge = {});

}  // namespace lrfs::gm
