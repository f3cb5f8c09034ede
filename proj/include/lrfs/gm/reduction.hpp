#pragma once

#include "lrfs/gm/gaussian_mixture.hpp"

#include <cstddef>

namespace lrfs::gm {

/// Prune / merge / cap settings for mixture reduction.
struct ReductionParams {
    double merge_threshold = 4.0;        // squared Mahalanobis distance
    double truncation_threshold = 1e-4;  // relative weight
    std::size_t max_components = 25;
};

/// Moment-preserving reduction of a normalized mixture:
///  1. drop components whose normalized weight is below `truncation_threshold`
///     (the heaviest component always survives);
///  2. repeatedly take the heaviest remaining component and merge into it every
///     component within squared Mahalanobis distance `merge_threshold`, measured
///     with the heaviest component's covariance;
///  3. keep the `max_components` heaviest, earlier position winning ties;
///  4. renormalize.
[[nodiscard]] GaussianMixture gm_merge_prune_cap(const GaussianMixture& p,
                                                 double merge_threshold,
                                                 double truncation_threshold,
                                                 std::size_t max_components);

[[nodiscard]] inline GaussianMixture reduce(const GaussianMixture& p, const ReductionParams& params) {
    return gm_merge_prune_cap(p, params.merge_threshold, params.truncation_threshold,
                              params.max_components);
}

}  // namespace lrfs::gm
