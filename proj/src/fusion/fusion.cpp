#include "lrfs/fusion/fusion.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/gm/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lrfs::fusion {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename Density>
std::vector<WeightedDensity<Density>> active_inputs(std::span<const WeightedDensity<Density>> inputs) {
    if (inputs.empty()) throw ValidationError("fusion needs at least one input");
    double sum = 0.0;
    std::vector<WeightedDensity<Density>> active;
    for (const auto& in : inputs) {
        if (in.density == nullptr) throw ValidationError("fusion input is null");
        if (!(in.weight >= 0.0)) throw ValidationError("fusion weights must be non-negative");
        sum += in.weight;
        if (in.weight > 0.0) active.push_back(in);
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("fusion weights must sum to one");
    return active;
}

struct PdfFusion {
    gm::PdfPtr pdf;
    double log_eta = 0.0;
    bool ok = true;
};

/// Fuses one label's pdfs across inputs. Identical pdfs are a fixed point with
/// η = 1 (the weights sum to one), so they are passed through.
PdfFusion fuse_pdfs(const std::vector<gm::PdfPtr>& pdfs, const std::vector<double>& weights,
                    const FusionOptions& options) {
    bool shared = true;
    for (const auto& p : pdfs) shared = shared && p == pdfs.front();
    if (shared) return {pdfs.front(), 0.0, true};

    std::vector<gm::WeightedMixture> in;
    for (std::size_t i = 0; i < pdfs.size(); ++i) in.push_back({pdfs[i].get(), weights[i]});
    try {
        gm::ChernoffResult r = gm::gm_chernoff_multi(in, options.pre_merge);
        const double log_eta = options.clamp_normalizer ? std::min(r.log_normalizer, 0.0) : r.log_normalizer;
        return {gm::make_pdf(std::move(r.mixture)), log_eta, std::isfinite(log_eta)};
    } catch (const EmptyFusionError&) {
        return {nullptr, kNegInf, false};
    }
}

}  // namespace

rfs::MdGlmbDensity fuse_mdglmb(std::span<const WeightedDensity<rfs::MdGlmbDensity>> inputs,
                               const FusionOptions& options, FusionDiagnostics* diagnostics) {
    const auto active = active_inputs(inputs);
    if (active.size() == 1) return *active.front().density;

    std::vector<double> weights;
    std::vector<double> totals;
    for (const auto& in : active) {
        weights.push_back(in.weight);
        totals.push_back(in.density->log_total_weight());
    }

    // Common label sets, and the distinct per-label pdf tuples they need.
    struct Common {
        const rfs::LabelSet* labels;
        std::vector<const rfs::Hypothesis*> hyps;
        std::vector<std::size_t> tuple;  // per label, index into `tuples`
    };
    std::vector<Common> common;
    std::map<std::vector<const gm::GaussianMixture*>, std::size_t> tuple_index;
    std::vector<std::vector<gm::PdfPtr>> tuples;
    for (const auto& [labels, h0] : active.front().density->hypotheses()) {
        Common c{&labels, {&h0}, {}};
        for (std::size_t i = 1; i < active.size(); ++i) {
            const auto it = active[i].density->hypotheses().find(labels);
            if (it == active[i].density->hypotheses().end()) break;
            c.hyps.push_back(&it->second);
        }
        if (c.hyps.size() != active.size()) continue;
        for (std::size_t l = 0; l < labels.size(); ++l) {
            std::vector<const gm::GaussianMixture*> key;
            std::vector<gm::PdfPtr> pdfs;
            for (const auto* h : c.hyps) {
                key.push_back(h->pdfs[l].get());
                pdfs.push_back(h->pdfs[l]);
            }
            const auto [it, inserted] = tuple_index.emplace(std::move(key), tuples.size());
            if (inserted) tuples.push_back(std::move(pdfs));
            c.tuple.push_back(it->second);
        }
        common.push_back(std::move(c));
    }

    std::vector<PdfFusion> fused(tuples.size());
    parallel_for(tuples.size(), options.execution,
                 [&](std::size_t t) { fused[t] = fuse_pdfs(tuples[t], weights, options); });

    rfs::MdGlmbDensity out;
    for (const auto& c : common) {
        double log_w = 0.0;
        for (std::size_t i = 0; i < active.size(); ++i) log_w += weights[i] * (c.hyps[i]->log_weight - totals[i]);
        std::vector<gm::PdfPtr> pdfs;
        bool ok = true;
        for (std::size_t t : c.tuple) {
            ok = ok && fused[t].ok;
            log_w += fused[t].log_eta;
            pdfs.push_back(fused[t].pdf);
        }
        if (!ok || !std::isfinite(log_w)) continue;
        out.add(*c.labels, log_w, std::move(pdfs));
    }
    if (out.empty()) {
        if (diagnostics) ++diagnostics->empty_intersections;
        return rfs::MdGlmbDensity::no_objects();
    }
    out.normalize();
    return out;
}

rfs::LmbDensity fuse_lmb(std::span<const WeightedDensity<rfs::LmbDensity>> inputs, const FusionOptions& options) {
    const auto active = active_inputs(inputs);
    if (active.size() == 1) return *active.front().density;

    std::vector<double> weights;
    for (const auto& in : active) weights.push_back(in.weight);

    std::vector<rfs::Label> labels;
    std::vector<std::vector<const rfs::Bernoulli*>> entries;
    for (const auto& [l, b0] : active.front().density->entries()) {
        std::vector<const rfs::Bernoulli*> e{&b0};
        for (std::size_t i = 1; i < active.size() && active[i].density->contains(l); ++i) {
            e.push_back(&active[i].density->at(l));
        }
        if (e.size() != active.size()) continue;
        labels.push_back(l);
        entries.push_back(std::move(e));
    }

    std::vector<PdfFusion> fused(labels.size());
    std::vector<double> existence(labels.size(), 0.0);
    parallel_for(labels.size(), options.execution, [&](std::size_t k) {
        std::vector<gm::PdfPtr> pdfs;
        double log_q = 0.0;
        double log_r = 0.0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            const double r = entries[k][i]->existence;
            pdfs.push_back(entries[k][i]->pdf);
            log_q += r < 1.0 ? weights[i] * std::log1p(-r) : kNegInf;
            log_r += r > 0.0 ? weights[i] * std::log(r) : kNegInf;
        }
        fused[k] = fuse_pdfs(pdfs, weights, options);
        if (!fused[k].ok || log_r == kNegInf) return;
        log_r += fused[k].log_eta;
        // r̄ = r̃ / (q̃ + r̃) = 1 / (1 + exp(log q̃ − log r̃))
        existence[k] = log_q == kNegInf ? 1.0 : 1.0 / (1.0 + std::exp(log_q - log_r));
    });

    rfs::LmbDensity out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (existence[k] > 0.0 && fused[k].pdf) out.set(labels[k], existence[k], fused[k].pdf);
    }
    return out;
}

}  // namespace lrfs::fusion
