#include "lrfs/rfs/densities.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/gm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lrfs::rfs {

void LmbDensity::set(const Label& label, double existence, gm::PdfPtr pdf) {
    if (!(existence >= 0.0 && existence <= 1.0)) {
        throw ValidationError("existence probability of " + to_string(label) + " outside [0,1]");
    }
    if (!pdf || pdf->empty()) throw ValidationError("track " + to_string(label) + " has no pdf");
    entries_[label] = Bernoulli{existence, std::move(pdf)};
}

LabelSet LmbDensity::labels() const {
    std::vector<Label> out;
    out.reserve(entries_.size());
    for (const auto& [l, _] : entries_) out.push_back(l);
    return LabelSet(std::move(out));
}

std::size_t LmbDensity::prune(double threshold) {
    return std::erase_if(entries_, [&](const auto& kv) { return kv.second.existence < threshold; });
}

MdGlmbDensity MdGlmbDensity::no_objects() {
    MdGlmbDensity d;
    d.add(LabelSet{}, 0.0, {});
    return d;
}

void MdGlmbDensity::add(LabelSet labels, double log_weight, std::vector<gm::PdfPtr> pdfs) {
    if (pdfs.size() != labels.size()) {
        throw ValidationError("hypothesis " + to_string(labels) + " needs one pdf per label");
    }
    for (const auto& p : pdfs) {
        if (!p || p->empty()) throw ValidationError("hypothesis " + to_string(labels) + " has an empty pdf");
    }
    const auto [it, inserted] = hyps_.try_emplace(std::move(labels), Hypothesis{log_weight, std::move(pdfs)});
    if (!inserted) throw ValidationError("duplicate hypothesis " + to_string(it->first));
}

void MdGlmbDensity::insert_or_accumulate(const LabelSet& labels, double log_weight,
                                         std::vector<gm::PdfPtr> pdfs) {
    auto it = hyps_.find(labels);
    if (it == hyps_.end()) {
        add(labels, log_weight, std::move(pdfs));
        return;
    }
    it->second.log_weight = gm::log_sum_exp(it->second.log_weight, log_weight);
}

double MdGlmbDensity::log_total_weight() const {
    std::vector<double> w;
    w.reserve(hyps_.size());
    for (const auto& [_, h] : hyps_) w.push_back(h.log_weight);
    return gm::log_sum_exp(w);
}

double MdGlmbDensity::normalize() {
    const double total = log_total_weight();
    if (!std::isfinite(total)) return total;
    for (auto& [_, h] : hyps_) h.log_weight -= total;
    return total;
}

bool MdGlmbDensity::is_normalized(double tol) const {
    return !hyps_.empty() && std::abs(log_total_weight()) <= tol;
}

void MdGlmbDensity::truncate(std::size_t max_hypotheses) {
    if (hyps_.size() > max_hypotheses) {
        std::vector<std::pair<double, const LabelSet*>> order;
        order.reserve(hyps_.size());
        for (const auto& [l, h] : hyps_) order.emplace_back(h.log_weight, &l);
        // map iteration is label-ordered, so a stable sort breaks ties lexicographically
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        Hypotheses kept;
        for (std::size_t i = 0; i < max_hypotheses; ++i) {
            auto node = hyps_.extract(*order[i].second);
            kept.insert(std::move(node));
        }
        hyps_ = std::move(kept);
    }
    normalize();
}

void MdGlmbDensity::prune(double threshold) {
    if (hyps_.empty()) return;
    const double total = log_total_weight();
    const double log_threshold = std::log(threshold) + total;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [_, h] : hyps_) best = std::max(best, h.log_weight);
    std::erase_if(hyps_, [&](const auto& kv) {
        return kv.second.log_weight < log_threshold && kv.second.log_weight < best;
    });
    normalize();
}

LabelSet MdGlmbDensity::label_space() const {
    std::vector<Label> all;
    for (const auto& [ls, _] : hyps_) all.insert(all.end(), ls.begin(), ls.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return LabelSet(std::move(all));
}

}  // namespace lrfs::rfs
