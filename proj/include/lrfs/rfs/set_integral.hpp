#pragma once

#include "lrfs/rfs/densities.hpp"

#include <functional>
#include <span>
#include <vector>

namespace lrfs::rfs {

/// A point of a labeled set on a scalar kinematic space.
struct LabeledScalar {
    double x = 0.0;
    Label label;
};

/// Evaluates a labeled multi-object density at a finite set, given as points
/// with distinct labels sorted by label.
using DensityEvaluator = std::function<double(std::span<const LabeledScalar>)>;

/// Uniform grid on [lo, hi] with trapezoid quadrature weights.
struct Grid1D {
    double lo = -10.0;
    double hi = 10.0;
    std::size_t points = 401;

    [[nodiscard]] std::vector<double> nodes() const;
    [[nodiscard]] std::vector<double> weights() const;
};

/// ∫ f({(x_1,ℓ_1),…,(x_n,ℓ_n)}) dx_1…dx_n for the fixed labels ℓ_i of `labels`,
/// by tensor-product quadrature.
[[nodiscard]] double labeled_integral(const DensityEvaluator& f, const LabelSet& labels, const Grid1D& grid);

/// Brute-force set integral Σ_{L⊆label_space} labeled_integral(f, L). For
/// distinct labels the 1/n! of the set integral cancels against the n! label
/// orderings, so each subset is integrated once. Tractable for |label_space| ≤ 3.
[[nodiscard]] double set_integral_oracle(const DensityEvaluator& f, const LabelSet& label_space,
                                         const Grid1D& grid);

/// π(X) = w(L(X)) Π p(x_ℓ; L(X)) for a density on a scalar space.
[[nodiscard]] DensityEvaluator evaluator(const MdGlmbDensity& d);

/// π(X) = Π_{ℓ∉L(X)} (1 − r(ℓ)) Π_{ℓ∈L(X)} r(ℓ) p(x_ℓ, ℓ) for a density on a scalar space.
[[nodiscard]] DensityEvaluator evaluator(const LmbDensity& d);

}  // namespace lrfs::rfs
