#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lrfs::sim {

/// Outcome of comparing a fast routine with its brute-force counterpart on
/// randomly generated instances.
struct OracleReport {
    std::string name;
    std::size_t cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// OSPA by optimal assignment vs. exhaustive injection search, on random set
/// pairs of up to 4 points each (c = 600, p = 2).
[[nodiscard]] OracleReport ospa_oracle(std::size_t cases = 1000, std::uint64_t seed = 7);

/// Ranked assignments (Murty) vs. the canonical prefix of exhaustive
/// enumeration, on random association score matrices of up to 4 tracks and
/// 4 measurements. The error is the largest score difference; any mismatch
/// in the chosen columns counts as an infinite error.
[[nodiscard]] OracleReport assignment_oracle(std::size_t cases = 300, std::uint64_t seed = 11);

/// k most probable Bernoulli realizations vs. sorting all 2^n of them, on
/// random lists of up to 8 entries. Compares log-weights rank by rank.
[[nodiscard]] OracleReport subsets_oracle(std::size_t cases = 300, std::uint64_t seed = 13);

[[nodiscard]] std::vector<std::string> oracle_names();
/// Runs the oracle called `name`; throws ValidationError for unknown names.
[[nodiscard]] OracleReport run_oracle(const std::string& name);

}  // namespace lrfs::sim
