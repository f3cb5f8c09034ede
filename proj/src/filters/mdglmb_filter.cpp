#include "lrfs/filters/mdglmb_filter.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/filters/track_ops.hpp"
#include "lrfs/gm/reduction.hpp"
#include "lrfs/rfs/operations.hpp"
#include "lrfs/rfs/subsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace lrfs::filters {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// A track density as it appears in a hypothesis; P_D and P_S may depend on
/// the label, so the label is part of the key.
using TrackKey = std::pair<const gm::GaussianMixture*, rfs::Label>;

/// Distinct (pdf, label) pairs of a density in deterministic first-seen order.
struct TrackIndex {
    std::vector<TrackKey> keys;
    std::vector<gm::PdfPtr> pdfs;
    std::map<TrackKey, std::size_t> position;

    explicit TrackIndex(const rfs::MdGlmbDensity& d) {
        for (const auto& [labels, h] : d.hypotheses()) {
            for (std::size_t i = 0; i < labels.size(); ++i) {
                const TrackKey key{h.pdfs[i].get(), labels[i]};
                if (position.emplace(key, keys.size()).second) {
                    keys.push_back(key);
                    pdfs.push_back(h.pdfs[i]);
                }
            }
        }
    }
    [[nodiscard]] std::size_t at(const gm::PdfPtr& pdf, const rfs::Label& l) const {
        return position.at(TrackKey{pdf.get(), l});
    }
};

struct PredictionSource {
    double log_weight;
    std::vector<rfs::Label> labels;  // survivors of J, then births
    std::vector<gm::PdfPtr> pdfs;
    rfs::BernoulliSubsetEnumerator subsets;
};

/// Mixes per-label pdfs across contributors; a label whose contributors all
/// share one pdf keeps it without copying.
std::vector<gm::PdfPtr> mix_contributions(const std::vector<double>& log_w,
                                          const std::vector<std::vector<gm::PdfPtr>>& contributions,
                                          std::size_t n_labels, const gm::ReductionParams& reduction) {
    std::vector<gm::PdfPtr> out(n_labels);
    for (std::size_t l = 0; l < n_labels; ++l) {
        bool shared = true;
        for (const auto& c : contributions) shared = shared && c[l] == contributions.front()[l];
        if (shared) {
            out[l] = contributions.front()[l];
            continue;
        }
        // merge identical pointers before mixing
        std::vector<const gm::GaussianMixture*> seen;
        std::vector<double> seen_w;
        for (std::size_t c = 0; c < contributions.size(); ++c) {
            const auto* p = contributions[c][l].get();
            auto it = std::find(seen.begin(), seen.end(), p);
            if (it == seen.end()) {
                seen.push_back(p);
                seen_w.push_back(log_w[c]);
            } else {
                auto& w = seen_w[static_cast<std::size_t>(it - seen.begin())];
                w = gm::log_sum_exp(w, log_w[c]);
            }
        }
        std::vector<gm::LogWeightedMixture> parts;
        for (std::size_t s = 0; s < seen.size(); ++s) parts.push_back({seen_w[s], seen[s]});
        out[l] = gm::make_pdf(gm::reduce(gm::mix(parts), reduction));
    }
    return out;
}

std::size_t assignments_for(double log_weight, const FilterConfig& cfg) {
    if (!cfg.proportional_assignments) return cfg.assignments_per_hypothesis;
    const double share = std::ceil(static_cast<double>(cfg.max_hypotheses) * std::exp(log_weight));
    const double k = std::clamp(share, 1.0, static_cast<double>(cfg.assignments_per_hypothesis));
    return static_cast<std::size_t>(k);
}

}  // namespace

rfs::MdGlmbDensity mdglmb_predict(const rfs::MdGlmbDensity& posterior, const MotionModel& motion,
                                  const BirthModel& birth, int k, const FilterConfig& cfg) {
    if (posterior.empty()) throw ValidationError("prediction of an empty density");

    // Predict every distinct track density once.
    const TrackIndex tracks(posterior);
    std::vector<PredictedTrack> predicted(tracks.keys.size());
    parallel_for(tracks.keys.size(), cfg.execution, [&](std::size_t i) {
        predicted[i] = predict_track(*tracks.pdfs[i], tracks.keys[i].second, motion, cfg.ut);
    });

    std::vector<const BirthEntry*> births;
    for (const auto& b : birth.entries) births.push_back(&b);
    std::sort(births.begin(), births.end(), [](const auto* a, const auto* b) { return a->index < b->index; });
    if (!births.empty()) {
        for (const auto& [labels, _] : posterior.hypotheses()) {
            if (!labels.empty() && labels.labels().back().birth_time >= k) {
                throw ValidationError("posterior already holds labels born at time " + std::to_string(k));
            }
        }
    }

    std::vector<PredictionSource> sources;
    sources.reserve(posterior.size());
    const double total = posterior.log_total_weight();
    for (const auto& [labels, h] : posterior.hypotheses()) {
        std::vector<rfs::Label> ls;
        std::vector<gm::PdfPtr> pdfs;
        std::vector<double> r;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const auto& pt = predicted[tracks.at(h.pdfs[i], labels[i])];
            ls.push_back(labels[i]);
            pdfs.push_back(pt.pdf);
            r.push_back(std::clamp(pt.survival, 0.0, 1.0));
        }
        for (const auto* b : births) {
            ls.push_back(rfs::Label{k, b->index});
            pdfs.push_back(b->pdf);
            r.push_back(b->existence);
        }
        sources.push_back(PredictionSource{h.log_weight - total, std::move(ls), std::move(pdfs),
                                           rfs::BernoulliSubsetEnumerator(r)});
    }

    // Best-first across all sources; ties go to the earlier source.
    using Entry = std::pair<double, std::size_t>;
    const auto worse = [](const Entry& a, const Entry& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (std::size_t s = 0; s < sources.size(); ++s) {
        if (!sources[s].subsets.done()) heap.emplace(sources[s].log_weight + sources[s].subsets.peek_log_weight(), s);
    }

    std::map<rfs::LabelSet, std::pair<std::vector<double>, std::vector<std::vector<gm::PdfPtr>>>> groups;
    const double log_floor = cfg.hypothesis_prune > 0.0 ? std::log(cfg.hypothesis_prune) : kNegInf;
    const std::size_t max_pops = 10 * cfg.max_hypotheses + 100;
    double best = kNegInf;
    std::size_t pops = 0;
    while (!heap.empty() && groups.size() < cfg.max_hypotheses && pops < max_pops) {
        const auto [w, s] = heap.top();
        heap.pop();
        if (pops == 0) best = w;
        if (w < best + log_floor) break;
        ++pops;

        auto& src = sources[s];
        const rfs::BernoulliSubset subset = src.subsets.next();
        std::vector<rfs::Label> in;
        std::vector<gm::PdfPtr> in_pdfs;
        for (std::size_t i = 0; i < subset.included.size(); ++i) {
            if (!subset.included[i]) continue;
            in.push_back(src.labels[i]);
            in_pdfs.push_back(src.pdfs[i]);
        }
        // survivors precede births and both are label-sorted, so `in` is sorted
        auto& g = groups[rfs::LabelSet(std::move(in))];
        g.first.push_back(w);
        g.second.push_back(std::move(in_pdfs));

        if (!src.subsets.done()) heap.emplace(src.log_weight + src.subsets.peek_log_weight(), s);
    }

    std::vector<const rfs::LabelSet*> keys;
    for (const auto& [ls, _] : groups) keys.push_back(&ls);
    std::vector<std::vector<gm::PdfPtr>> mixed(keys.size());
    parallel_for(keys.size(), cfg.execution, [&](std::size_t i) {
        const auto& g = groups.at(*keys[i]);
        mixed[i] = mix_contributions(g.first, g.second, keys[i]->size(), cfg.reduction);
    });

    rfs::MdGlmbDensity out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out.add(*keys[i], gm::log_sum_exp(groups.at(*keys[i]).first), std::move(mixed[i]));
    }
    out.normalize();
    out.truncate(cfg.max_hypotheses);
    return out;
}

gm::Matrix association_scores(const std::vector<std::vector<double>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = n > 0 ? static_cast<Eigen::Index>(rows.front().size()) - 1 : 0;
    gm::Matrix s = gm::Matrix::Constant(n, m + n, kNegInf);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m; ++j) s(i, j) = row[static_cast<std::size_t>(j + 1)];
        s(i, m + i) = row[0];
    }
    return s;
}

rfs::DeltaGlmbDensity mdglmb_update_components(const rfs::MdGlmbDensity& predicted, std::span<const double> Z,
                                               const sensors::SensorModel& sensor, const FilterConfig& cfg) {
    if (predicted.empty()) throw ValidationError("update of an empty density");
    const auto m = static_cast<int>(Z.size());

    const TrackIndex tracks(predicted);
    std::vector<PsiRow> psi(tracks.keys.size());
    parallel_for(tracks.keys.size(), cfg.execution, [&](std::size_t i) {
        psi[i] = compute_psi_row(tracks.pdfs[i], tracks.keys[i].second, Z, sensor, cfg);
    });

    std::vector<std::pair<const rfs::LabelSet*, const rfs::Hypothesis*>> hyps;
    for (const auto& [labels, h] : predicted.hypotheses()) hyps.emplace_back(&labels, &h);
    const double total = predicted.log_total_weight();

    std::vector<std::vector<rfs::DeltaGlmbComponent>> per_hyp(hyps.size());
    parallel_for(hyps.size(), cfg.execution, [&](std::size_t h) {
        const rfs::LabelSet& labels = *hyps[h].first;
        const rfs::Hypothesis& hyp = *hyps[h].second;
        const double log_w = hyp.log_weight - total;

        std::vector<const PsiRow*> rows;
        std::vector<std::vector<double>> scores;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            rows.push_back(&psi[tracks.at(hyp.pdfs[i], labels[i])]);
            scores.push_back(rows.back()->log_psi);
        }
        const gm::Matrix score = association_scores(scores);
        const auto assignments = cfg.exhaustive_assignments
                                     ? all_assignments(score)
                                     : ranked_assignments(score, assignments_for(log_w, cfg));

        auto& out = per_hyp[h];
        out.reserve(assignments.size());
        for (std::size_t a = 0; a < assignments.size(); ++a) {
            rfs::DeltaGlmbComponent c;
            c.labels = labels;
            c.history = a;
            c.log_weight = log_w + assignments[a].score;
            c.pdfs.reserve(labels.size());
            for (std::size_t i = 0; i < labels.size(); ++i) {
                const int col = assignments[a].cols[i];
                c.pdfs.push_back(rows[i]->pdf[col < m ? static_cast<std::size_t>(col + 1) : 0]);
            }
            out.push_back(std::move(c));
        }
    });

    rfs::DeltaGlmbDensity d;
    for (auto& v : per_hyp) {
        for (auto& c : v) d.components.push_back(std::move(c));
    }
    if (d.components.empty()) throw Error(ErrorCategory::Runtime, "update left no admissible association");
    return d;
}

rfs::MdGlmbDensity finalize_update(const rfs::DeltaGlmbDensity& components, const FilterConfig& cfg) {
    rfs::MdGlmbDensity d = rfs::marginalize(components);
    d.prune(cfg.hypothesis_prune);
    d.truncate(cfg.max_hypotheses);

    rfs::reduce_track_pdfs(d, cfg.reduction, cfg.execution);
    return d;
}

rfs::MdGlmbDensity mdglmb_update(const rfs::MdGlmbDensity& predicted, std::span<const double> Z,
                                 const sensors::SensorModel& sensor, const FilterConfig& cfg) {
    return finalize_update(mdglmb_update_components(predicted, Z, sensor, cfg), cfg);
}

rfs::MdGlmbDensity centralized_mdglmb_step(const rfs::MdGlmbDensity& posterior, const MotionModel& motion,
                                           const BirthModel& birth, int k,
                                           std::span<const sensors::SensorModel> sensors,
                                           const std::vector<std::vector<double>>& scans, const FilterConfig& cfg) {
    if (sensors.size() != scans.size()) throw ValidationError("one scan per sensor required");
    rfs::MdGlmbDensity d = mdglmb_predict(posterior, motion, birth, k, cfg);
    for (std::size_t s = 0; s < sensors.size(); ++s) d = mdglmb_update(d, scans[s], sensors[s], cfg);
    return d;
}

}  // namespace lrfs::filters
