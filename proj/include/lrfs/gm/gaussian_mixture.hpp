#pragma once

#include "lrfs/gm/gaussian.hpp"

#include <memory>
#include <span>
#include <vector>

namespace lrfs::gm {

struct Component {
    double log_weight = 0.0;
    Gaussian gaussian;
};

/// Weighted sum of Gaussians with weights kept in the log domain.
class GaussianMixture {
public:
    GaussianMixture() = default;
    explicit GaussianMixture(std::vector<Component> components);

    [[nodiscard]] static GaussianMixture single(Gaussian g);

    [[nodiscard]] std::size_t size() const { return components_.size(); }
    [[nodiscard]] bool empty() const { return components_.empty(); }
    [[nodiscard]] Eigen::Index dim() const;

    [[nodiscard]] const std::vector<Component>& components() const { return components_; }
    [[nodiscard]] const Component& operator[](std::size_t i) const { return components_[i]; }

    void add(double log_weight, Gaussian g);
    void reserve(std::size_t n) { components_.reserve(n); }

    [[nodiscard]] double log_total_weight() const;

    /// Shifts log-weights so that they log-sum-exp to zero; returns the shift.
    double normalize();
    [[nodiscard]] GaussianMixture normalized() const;
    [[nodiscard]] bool is_normalized(double tol = 1e-9) const;

    /// Adds `delta` to every log-weight.
    void shift_log_weights(double delta);

    [[nodiscard]] Vector mean() const;
    [[nodiscard]] Matrix covariance() const;
    [[nodiscard]] double log_pdf(const Vector& x) const;
    [[nodiscard]] double pdf(const Vector& x) const;

    /// Heaviest component; the earliest one wins ties.
    [[nodiscard]] const Component& heaviest() const;

private:
    std::vector<Component> components_;
};

struct LogWeightedMixture {
    double log_weight = 0.0;
    const GaussianMixture* mixture = nullptr;
};

/// Normalized Σ_i w_i p_i, where each p_i is normalized before weighting.
/// Parts with weight zero are skipped; throws ValidationError if none remain.
[[nodiscard]] GaussianMixture mix(std::span<const LogWeightedMixture> parts);

/// Single-object densities are shared between hypotheses and between nodes.
using PdfPtr = std::shared_ptr<const GaussianMixture>;

[[nodiscard]] inline PdfPtr make_pdf(GaussianMixture m) {
    return std::make_shared<const GaussianMixture>(std::move(m));
}

}  // namespace lrfs::gm
