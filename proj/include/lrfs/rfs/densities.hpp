#pragma once

#include "lrfs/gm/gaussian_mixture.hpp"
#include "lrfs/rfs/label.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace lrfs::rfs {

/// A labeled single-object track: label plus normalized location density.
struct Track {
    Label label;
    gm::PdfPtr pdf;
};

// ---- LMB ----

struct Bernoulli {
    double existence = 0.0;
    gm::PdfPtr pdf;
};

/// Labeled multi-Bernoulli density {(r(ℓ), p(·,ℓ))}.
class LmbDensity {
public:
    using Entries = std::map<Label, Bernoulli>;

    /// Inserts or replaces; throws ValidationError if r ∉ [0,1] or pdf is null/empty.
    void set(const Label& label, double existence, gm::PdfPtr pdf);
    void erase(const Label& label) { entries_.erase(label); }

    [[nodiscard]] const Entries& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] bool contains(const Label& l) const { return entries_.count(l) != 0; }
    [[nodiscard]] const Bernoulli& at(const Label& l) const { return entries_.at(l); }
    [[nodiscard]] LabelSet labels() const;

    /// Removes entries with existence below `threshold`; returns how many.
    std::size_t prune(double threshold);

private:
    Entries entries_;
};

// ---- Mδ-GLMB ----

/// One hypothesis of an Mδ-GLMB: weight plus one pdf per label, aligned with
/// the label set's sorted order.
struct Hypothesis {
    double log_weight = 0.0;
    std::vector<gm::PdfPtr> pdfs;
};

/// Marginalized δ-GLMB {(w(I), p(·;I))} keyed on canonical label sets.
class MdGlmbDensity {
public:
    using Hypotheses = std::map<LabelSet, Hypothesis>;

    /// Density of "no objects": the single hypothesis ∅ with weight one.
    [[nodiscard]] static MdGlmbDensity no_objects();

    /// Throws ValidationError if `labels` is already present or the pdf count
    /// differs from |labels|.
    void add(LabelSet labels, double log_weight, std::vector<gm::PdfPtr> pdfs);
    /// Adds to an existing hypothesis by log-sum-exp if present; pdfs are only
    /// used when the label set is new.
    void insert_or_accumulate(const LabelSet& labels, double log_weight, std::vector<gm::PdfPtr> pdfs);

    [[nodiscard]] const Hypotheses& hypotheses() const { return hyps_; }
    [[nodiscard]] Hypotheses& hypotheses() { return hyps_; }
    [[nodiscard]] std::size_t size() const { return hyps_.size(); }
    [[nodiscard]] bool empty() const { return hyps_.empty(); }

    [[nodiscard]] double log_total_weight() const;
    /// Shifts log-weights to sum to one; returns the shift.
    double normalize();
    [[nodiscard]] bool is_normalized(double tol = 1e-9) const;

    /// Keeps the `max_hypotheses` heaviest (lexicographically smaller label
    /// set wins ties) and renormalizes.
    void truncate(std::size_t max_hypotheses);
    /// Drops hypotheses whose normalized weight is below `threshold` (the
    /// heaviest always survives) and renormalizes.
    void prune(double threshold);

    /// Union of all labels appearing in any hypothesis.
    [[nodiscard]] LabelSet label_space() const;

private:
    Hypotheses hyps_;
};

// ---- δ-GLMB ----

struct DeltaGlmbComponent {
    LabelSet labels;
    std::size_t history = 0;  // association-history tag ξ
    double log_weight = 0.0;
    std::vector<gm::PdfPtr> pdfs;
};

/// δ-GLMB with explicit (I, ξ) components, as produced transiently by an update.
struct DeltaGlmbDensity {
    std::vector<DeltaGlmbComponent> components;
};

}  // namespace lrfs::rfs
