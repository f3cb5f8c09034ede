#pragma once

#include "lrfs/gm/gaussian.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lrfs::filters {

/// Row i of an assignment goes to column cols[i]; columns are distinct.
struct Assignment {
    std::vector<int> cols;
    double score = 0.0;  // Σ_i score(i, cols[i])
};

/// Minimum-cost assignment of every row to a distinct column (rows ≤ columns).
/// Entries equal to +∞ are forbidden. Returns nullopt if no finite
/// assignment exists.
[[nodiscard]] std::optional<std::vector<int>> hungarian(const gm::Matrix& cost);

/// Sums score(i, cols[i]) in row order. Used for every reported score so that
/// different enumeration paths yield bitwise-identical values.
[[nodiscard]] double assignment_score(const gm::Matrix& score, const std::vector<int>& cols);

/// Orders by score descending, then by column vector lexicographically.
void sort_canonical(std::vector<Assignment>& assignments);

/// The `k` highest-scoring assignments of a score matrix (higher is better,
/// −∞ forbidden), by Murty's partitioning over Hungarian solves. The result is
/// in canonical order. Fewer than `k` are returned when fewer exist.
///
/// Ties at the k-th score are broken so that the returned set is the canonical
/// prefix of all assignments, matching an exhaustive enumeration.
[[nodiscard]] std::vector<Assignment> ranked_assignments(const gm::Matrix& score, std::size_t k);

/// Every finite assignment, in canonical order. Exponential; for small
/// instances and tests.
[[nodiscard]] std::vector<Assignment> all_assignments(const gm::Matrix& score);

}  // namespace lrfs::filters
