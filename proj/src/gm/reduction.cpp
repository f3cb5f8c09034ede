#include "lrfs/gm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lrfs::gm {

GaussianMixture gm_merge_prune_cap(const GaussianMixture& p, double merge_threshold,
                                   double truncation_threshold, std::size_t max_components) {
    if (p.empty()) return {};
    const auto& comps = p.components();
    const double total = p.log_total_weight();

    // ---- prune ----
    std::vector<std::size_t> alive;
    alive.reserve(comps.size());
    std::vector<double> w(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        w[i] = std::exp(comps[i].log_weight - total);
        if (w[i] >= truncation_threshold) alive.push_back(i);
    }
    if (alive.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < comps.size(); ++i) {
            if (comps[i].log_weight > comps[best].log_weight) best = i;
        }
        alive.push_back(best);
    }

    // ---- merge ----
    std::vector<Component> merged;
    std::vector<bool> used(comps.size(), false);
    std::size_t remaining = alive.size();
    while (remaining > 0) {
        std::size_t lead = comps.size();
        for (std::size_t i : alive) {
            if (used[i]) continue;
            if (lead == comps.size() || comps[i].log_weight > comps[lead].log_weight) lead = i;
        }
        const Gaussian& g_lead = comps[lead].gaussian;
        std::vector<std::size_t> cluster;
        const auto chol = try_cholesky(g_lead.covariance);
        for (std::size_t i : alive) {
            if (used[i]) continue;
            if (i == lead) {
                cluster.push_back(i);
                continue;
            }
            if (!chol) continue;
            const double d2 = chol->quadratic_form(comps[i].gaussian.mean - g_lead.mean);
            if (d2 <= merge_threshold) cluster.push_back(i);
        }
        for (std::size_t i : cluster) used[i] = true;
        remaining -= cluster.size();

        if (cluster.size() == 1) {
            merged.push_back(comps[lead]);
            continue;
        }
        double w_sum = 0.0;
        for (std::size_t i : cluster) w_sum += w[i];
        Vector mean = Vector::Zero(g_lead.dim());
        for (std::size_t i : cluster) mean += (w[i] / w_sum) * comps[i].gaussian.mean;
        Matrix cov = Matrix::Zero(g_lead.dim(), g_lead.dim());
        for (std::size_t i : cluster) {
            const Vector d = comps[i].gaussian.mean - mean;
            cov += (w[i] / w_sum) * (comps[i].gaussian.covariance + d * d.transpose());
        }
        merged.push_back(Component{std::log(w_sum) + total,
                                   Gaussian::unchecked(std::move(mean), symmetrize(cov))});
    }

    // ---- cap ----
    if (merged.size() > max_components && max_components > 0) {
        std::vector<std::size_t> order(merged.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return merged[a].log_weight > merged[b].log_weight;
        });
        order.resize(max_components);
        std::sort(order.begin(), order.end());
        std::vector<Component> capped;
        capped.reserve(max_components);
        for (std::size_t i : order) capped.push_back(std::move(merged[i]));
        merged = std::move(capped);
    }

    GaussianMixture out(std::move(merged));
    out.normalize();
    return out;
}

}  // namespace lrfs::gm
