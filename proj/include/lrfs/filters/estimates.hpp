#pragma once

#include "lrfs/gm/gaussian.hpp"
#include "lrfs/rfs/densities.hpp"

#include <vector>

namespace lrfs::filters {

struct Estimate {
    rfs::Label label;
    gm::Vector state;
};

/// Mean of the heaviest Gaussian component, standing in for the mixture mode.
[[nodiscard]] gm::Vector point_estimate(const gm::GaussianMixture& pdf);

/// MAP cardinality N*, then the heaviest hypothesis with N* labels (the
/// lexicographically smaller label set on ties), one state per label.
[[nodiscard]] std::vector<Estimate> extract_estimates(const rfs::MdGlmbDensity& d);

/// MAP cardinality C* of the Bernoulli sum, then the C* labels with the largest
/// existence probabilities (smaller label first on ties).
[[nodiscard]] std::vector<Estimate> extract_estimates(const rfs::LmbDensity& d);

}  // namespace lrfs::filters
