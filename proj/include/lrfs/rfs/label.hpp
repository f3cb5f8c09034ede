#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace lrfs::rfs {

/// Track label: (time of birth, index among objects born at that time).
struct Label {
    int birth_time = 0;
    int index = 1;

    auto operator<=>(const Label&) const = default;
};

[[nodiscard]] std::string to_string(const Label& l);

/// Sorted, duplicate-free set of labels. Equality and ordering are those of
/// the sorted sequence, so label sets can key ordered maps canonically.
class LabelSet {
public:
    LabelSet() = default;
    /// Sorts `labels`; throws DuplicateLabelError if any label repeats.
    explicit LabelSet(std::vector<Label> labels);
    LabelSet(std::initializer_list<Label> labels);

    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] bool empty() const { return labels_.empty(); }
    [[nodiscard]] auto begin() const { return labels_.begin(); }
    [[nodiscard]] auto end() const { return labels_.end(); }
    [[nodiscard]] const Label& operator[](std::size_t i) const { return labels_[i]; }
    [[nodiscard]] const std::vector<Label>& labels() const { return labels_; }

    [[nodiscard]] bool contains(const Label& l) const;
    [[nodiscard]] std::optional<std::size_t> index_of(const Label& l) const;

    auto operator<=>(const LabelSet&) const = default;

private:
    std::vector<Label> labels_;
};

[[nodiscard]] std::string to_string(const LabelSet& s);

}  // namespace lrfs::rfs
