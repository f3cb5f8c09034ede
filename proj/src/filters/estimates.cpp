#include "lrfs/filters/estimates.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/rfs/operations.hpp"

#include <algorithm>
#include <iterator>

namespace lrfs::filters {

namespace {

std::size_t map_cardinality(const std::vector<double>& pmf) {
    return static_cast<std::size_t>(std::distance(pmf.begin(), std::max_element(pmf.begin(), pmf.end())));
}

}  // namespace

gm::Vector point_estimate(const gm::GaussianMixture& pdf) { return pdf.heaviest().gaussian.mean; }

std::vector<Estimate> extract_estimates(const rfs::MdGlmbDensity& d) {
    if (d.empty()) return {};
    const std::size_t n_star = map_cardinality(rfs::cardinality_distribution(d));

    const rfs::LabelSet* best = nullptr;
    const rfs::Hypothesis* best_h = nullptr;
    for (const auto& [labels, h] : d.hypotheses()) {
        if (labels.size() != n_star) continue;
        if (best == nullptr || h.log_weight > best_h->log_weight) {
            best = &labels;
            best_h = &h;
        }
    }
    if (best == nullptr) throw Error(ErrorCategory::Runtime, "no hypothesis of MAP cardinality");

    std::vector<Estimate> out;
    for (std::size_t i = 0; i < best->size(); ++i) out.push_back({(*best)[i], point_estimate(*best_h->pdfs[i])});
    return out;
}

std::vector<Estimate> extract_estimates(const rfs::LmbDensity& d) {
    const std::size_t c_star = map_cardinality(rfs::cardinality_distribution(d));
    std::vector<std::pair<rfs::Label, const rfs::Bernoulli*>> entries;
    for (const auto& [l, b] : d.entries()) entries.emplace_back(l, &b);
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second->existence > b.second->existence; });
    std::vector<Estimate> out;
    for (std::size_t i = 0; i < c_star && i < entries.size(); ++i) {
        out.push_back({entries[i].first, point_estimate(*entries[i].second->pdf)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    return out;
}

}  // namespace lrfs::filters
