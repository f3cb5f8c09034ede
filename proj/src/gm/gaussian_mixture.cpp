#include "lrfs/gm/gaussian_mixture.hpp"

#include "lrfs/errors.hpp"

#include <cmath>
#include <limits>

namespace lrfs::gm {

GaussianMixture::GaussianMixture(std::vector<Component> components)
    : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.gaussian.dim() != components_.front().gaussian.dim()) {
            throw ValidationError("GaussianMixture: components differ in dimension");
        }
    }
}

GaussianMixture GaussianMixture::single(Gaussian g) {
    GaussianMixture m;
    m.add(0.0, std::move(g));
    return m;
}

Eigen::Index GaussianMixture::dim() const {
    return components_.empty() ? 0 : components_.front().gaussian.dim();
}

void GaussianMixture::add(double log_weight, Gaussian g) {
    components_.push_back(Component{log_weight, std::move(g)});
}

double GaussianMixture::log_total_weight() const {
    double max = -std::numeric_limits<double>::infinity();
    for (const auto& c : components_) max = std::max(max, c.log_weight);
    if (!std::isfinite(max)) return max;
    double sum = 0.0;
    for (const auto& c : components_) sum += std::exp(c.log_weight - max);
    return max + std::log(sum);
}

double GaussianMixture::normalize() {
    const double total = log_total_weight();
    if (!std::isfinite(total)) return total;
    for (auto& c : components_) c.log_weight -= total;
    return total;
}

GaussianMixture GaussianMixture::normalized() const {
    GaussianMixture copy = *this;
    copy.normalize();
    return copy;
}

bool GaussianMixture::is_normalized(double tol) const {
    return !components_.empty() && std::abs(log_total_weight()) <= tol;
}

void GaussianMixture::shift_log_weights(double delta) {
    for (auto& c : components_) c.log_weight += delta;
}

Vector GaussianMixture::mean() const {
    const double total = log_total_weight();
    Vector m = Vector::Zero(dim());
    for (const auto& c : components_) m += std::exp(c.log_weight - total) * c.gaussian.mean;
    return m;
}

Matrix GaussianMixture::covariance() const {
    const double total = log_total_weight();
    const Vector m = mean();
    Matrix cov = Matrix::Zero(dim(), dim());
    for (const auto& c : components_) {
        const Vector d = c.gaussian.mean - m;
        cov += std::exp(c.log_weight - total) * (c.gaussian.covariance + d * d.transpose());
    }
    return cov;
}

double GaussianMixture::log_pdf(const Vector& x) const {
    std::vector<double> terms;
    terms.reserve(components_.size());
    for (const auto& c : components_) terms.push_back(c.log_weight + c.gaussian.log_pdf(x));
    return log_sum_exp(terms);
}

double GaussianMixture::pdf(const Vector& x) const { return std::exp(log_pdf(x)); }

const Component& GaussianMixture::heaviest() const {
    if (components_.empty()) throw ValidationError("heaviest() on an empty mixture");
    std::size_t best = 0;
    for (std::size_t i = 1; i < components_.size(); ++i) {
        if (components_[i].log_weight > components_[best].log_weight) best = i;
    }
    return components_[best];
}

GaussianMixture mix(std::span<const LogWeightedMixture> parts) {
    std::vector<Component> out;
    for (const auto& part : parts) {
        if (part.mixture == nullptr || part.mixture->empty()) continue;
        if (part.log_weight == -std::numeric_limits<double>::infinity()) continue;
        const double shift = part.log_weight - part.mixture->log_total_weight();
        for (const auto& c : part.mixture->components()) out.push_back({c.log_weight + shift, c.gaussian});
    }
    if (out.empty()) throw ValidationError("mixture of zero-weight parts");
    GaussianMixture m(std::move(out));
    m.normalize();
    return m;
}

}  // namespace lrfs::gm
