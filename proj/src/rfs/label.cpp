#include "lrfs/rfs/label.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>

namespace lrfs::rfs {

std::string to_string(const Label& l) {
    return "(" + std::to_string(l.birth_time) + "," + std::to_string(l.index) + ")";
}

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    const auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) {
        throw DuplicateLabelError("label " + to_string(*dup) + " appears more than once");
    }
}

LabelSet::LabelSet(std::initializer_list<Label> labels) : LabelSet(std::vector<Label>(labels)) {}

bool LabelSet::contains(const Label& l) const {
    return std::binary_search(labels_.begin(), labels_.end(), l);
}

std::optional<std::size_t> LabelSet::index_of(const Label& l) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::string to_string(const LabelSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += to_string(s[i]);
    }
    return out + "}";
}

}  // namespace lrfs::rfs
