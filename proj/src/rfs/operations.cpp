#include "lrfs/rfs/operations.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/gm/gaussian.hpp"
#include "lrfs/rfs/subsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lrfs::rfs {

std::vector<double> cardinality_distribution(const MdGlmbDensity& d) {
    std::size_t max_n = 0;
    for (const auto& [labels, _] : d.hypotheses()) max_n = std::max(max_n, labels.size());
    std::vector<std::vector<double>> by_n(max_n + 1);
    for (const auto& [labels, h] : d.hypotheses()) by_n[labels.size()].push_back(h.log_weight);
    const double total = d.log_total_weight();
    std::vector<double> pmf(max_n + 1, 0.0);
    for (std::size_t n = 0; n <= max_n; ++n) {
        if (!by_n[n].empty()) pmf[n] = std::exp(gm::log_sum_exp(by_n[n]) - total);
    }
    return pmf;
}

std::vector<double> cardinality_distribution(const LmbDensity& d) {
    std::vector<double> pmf{1.0};
    for (const auto& [_, b] : d.entries()) {
        std::vector<double> next(pmf.size() + 1, 0.0);
        for (std::size_t n = 0; n < pmf.size(); ++n) {
            next[n] += pmf[n] * (1.0 - b.existence);
            next[n + 1] += pmf[n] * b.existence;
        }
        pmf = std::move(next);
    }
    return pmf;
}

double expected_cardinality(const std::vector<double>& pmf) {
    double e = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) e += static_cast<double>(n) * pmf[n];
    return e;
}

LabelIntensity intensity(const MdGlmbDensity& d, const Label& ell) {
    std::vector<gm::LogWeightedMixture> parts;
    std::vector<double> log_w;
    for (const auto& [labels, h] : d.hypotheses()) {
        const auto idx = labels.index_of(ell);
        if (!idx) continue;
        parts.push_back({h.log_weight, h.pdfs[*idx].get()});
        log_w.push_back(h.log_weight);
    }
    LabelIntensity out;
    if (parts.empty()) return out;
    const double mass = gm::log_sum_exp(log_w) - d.log_total_weight();
    out.existence_mass = std::exp(mass);
    if (out.existence_mass > 0.0) out.pdf = gm::mix(parts);
    return out;
}

MdGlmbDensity marginalize(const DeltaGlmbDensity& d) {
    // Group by label set, preserving the order in which histories appear.
    std::map<LabelSet, std::vector<const DeltaGlmbComponent*>> groups;
    for (const auto& c : d.components) {
        if (c.pdfs.size() != c.labels.size()) {
            throw ValidationError("δ-GLMB component " + to_string(c.labels) + " needs one pdf per label");
        }
        groups[c.labels].push_back(&c);
    }

    MdGlmbDensity out;
    for (const auto& [labels, members] : groups) {
        std::vector<double> log_w;
        for (const auto* m : members) log_w.push_back(m->log_weight);
        const double group_weight = gm::log_sum_exp(log_w);
        if (group_weight == -std::numeric_limits<double>::infinity()) continue;

        std::vector<gm::PdfPtr> pdfs;
        pdfs.reserve(labels.size());
        for (std::size_t l = 0; l < labels.size(); ++l) {
            if (members.size() == 1) {
                pdfs.push_back(members.front()->pdfs[l]);
                continue;
            }
            // histories often share a track density; merge those weights first
            std::vector<gm::LogWeightedMixture> parts;
            for (const auto* m : members) {
                const auto* p = m->pdfs[l].get();
                auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& q) { return q.mixture == p; });
                if (it == parts.end()) {
                    parts.push_back({m->log_weight, p});
                } else {
                    it->log_weight = gm::log_sum_exp(it->log_weight, m->log_weight);
                }
            }
            if (parts.size() == 1) {
                pdfs.push_back(members.front()->pdfs[l]);
            } else {
                pdfs.push_back(gm::make_pdf(gm::mix(parts)));
            }
        }
        out.add(labels, group_weight, std::move(pdfs));
    }
    if (out.empty()) throw ValidationError("δ-GLMB density has no weight");
    out.normalize();
    return out;
}

LmbDensity lmb_from_mdglmb(const MdGlmbDensity& d) {
    LmbDensity out;
    for (const Label& ell : d.label_space()) {
        LabelIntensity li = intensity(d, ell);
        if (li.pdf.empty()) continue;
        out.set(ell, std::min(1.0, li.existence_mass), gm::make_pdf(std::move(li.pdf)));
    }
    return out;
}

MdGlmbDensity lmb_to_mdglmb(const LmbDensity& d, std::optional<std::size_t> max_hypotheses) {
    std::vector<Label> labels;
    std::vector<double> r;
    std::vector<gm::PdfPtr> pdfs;
    for (const auto& [l, b] : d.entries()) {
        labels.push_back(l);
        r.push_back(b.existence);
        pdfs.push_back(b.pdf);
    }

    const std::size_t limit = max_hypotheses.value_or(std::numeric_limits<std::size_t>::max());
    if (limit == 0) throw ValidationError("hypothesis limit must be positive");

    MdGlmbDensity out;
    BernoulliSubsetEnumerator subsets(r);
    while (out.size() < limit && !subsets.done()) {
        const BernoulliSubset s = subsets.next();
        std::vector<Label> in;
        std::vector<gm::PdfPtr> in_pdfs;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!s.included[i]) continue;
            in.push_back(labels[i]);
            in_pdfs.push_back(pdfs[i]);
        }
        out.add(LabelSet(std::move(in)), s.log_weight, std::move(in_pdfs));
    }
    out.normalize();
    return out;
}

void reduce_track_pdfs(MdGlmbDensity& d, const gm::ReductionParams& params, Execution exec) {
    std::map<const gm::GaussianMixture*, std::size_t> position;
    std::vector<gm::PdfPtr> distinct;
    for (const auto& [_, h] : d.hypotheses()) {
        for (const auto& p : h.pdfs) {
            if (position.emplace(p.get(), distinct.size()).second) distinct.push_back(p);
        }
    }
    std::vector<gm::PdfPtr> reduced(distinct.size());
    parallel_for(distinct.size(), exec, [&](std::size_t i) {
        reduced[i] = distinct[i]->size() > 1 ? gm::make_pdf(gm::reduce(*distinct[i], params)) : distinct[i];
    });
    for (auto& [_, h] : d.hypotheses()) {
        for (auto& p : h.pdfs) p = reduced[position.at(p.get())];
    }
}

void reduce_track_pdfs(LmbDensity& d, const gm::ReductionParams& params, Execution exec) {
    std::vector<std::pair<Label, Bernoulli>> entries(d.entries().begin(), d.entries().end());
    parallel_for(entries.size(), exec, [&](std::size_t i) {
        auto& pdf = entries[i].second.pdf;
        if (pdf->size() > 1) pdf = gm::make_pdf(gm::reduce(*pdf, params));
    });
    for (auto& [l, b] : entries) d.set(l, b.existence, std::move(b.pdf));
}

}  // namespace lrfs::rfs
