#include "lrfs/sim/oracles.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/filters/assignment.hpp"
#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/rfs/subsets.hpp"
#include "lrfs/sim/ospa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lrfs::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void finish(OracleReport& r) { r.passed = r.max_error <= r.tolerance; }

}  // namespace

OracleReport ospa_oracle(std::size_t cases, std::uint64_t seed) {
    OracleReport r{"ospa", cases, 0.0, 1e-9, false};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(0, 4);
    std::uniform_real_distribution<double> coord(0.0, 2000.0);
    for (std::size_t t = 0; t < cases; ++t) {
        std::vector<Point> X(static_cast<std::size_t>(size(rng)));
        std::vector<Point> Y(static_cast<std::size_t>(size(rng)));
        for (auto& x : X) x = {coord(rng), coord(rng)};
        for (auto& y : Y) y = {coord(rng), coord(rng)};
        const OspaResult a = ospa(X, Y, 600.0, 2.0);
        const OspaResult b = ospa_brute_force(X, Y, 600.0, 2.0);
        r.max_error = std::max({r.max_error, std::abs(a.total - b.total), std::abs(a.localization - b.localization),
                                std::abs(a.cardinality - b.cardinality)});
    }
    finish(r);
    return r;
}

OracleReport assignment_oracle(std::size_t cases, std::uint64_t seed) {
    OracleReport r{"assignment", cases, 0.0, 1e-12, false};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> meas(0, 4);
    std::uniform_real_distribution<double> value(-8.0, 2.0);
    std::bernoulli_distribution gated(0.2);
    for (std::size_t t = 0; t < cases; ++t) {
        const int n = dim(rng);
        const int m = meas(rng);
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
        for (auto& row : rows) {
            for (int j = 0; j < m; ++j) row.push_back(gated(rng) ? -kInf : value(rng));
            row.push_back(value(rng));  // misdetection
        }
        const gm::Matrix score = filters::association_scores(rows);
        const auto all = filters::all_assignments(score);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, all.size() + 2)(rng);
        const auto ranked = filters::ranked_assignments(score, k);
        const std::size_t expect = std::min(k, all.size());
        if (ranked.size() != expect) {
            r.max_error = kInf;
            continue;
        }
        for (std::size_t i = 0; i < expect; ++i) {
            if (ranked[i].cols != all[i].cols) r.max_error = kInf;
            r.max_error = std::max(r.max_error, std::abs(ranked[i].score - all[i].score));
        }
    }
    finish(r);
    return r;
}

OracleReport subsets_oracle(std::size_t cases, std::uint64_t seed) {
    OracleReport r{"subsets", cases, 0.0, 1e-12, false};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (std::size_t t = 0; t < cases; ++t) {
        std::vector<double> ex(static_cast<std::size_t>(len(rng)));
        for (auto& e : ex) e = prob(rng);
        const std::size_t total = std::size_t{1} << ex.size();
        std::vector<double> brute;
        for (std::size_t mask = 0; mask < total; ++mask) {
            double lw = 0.0;
            for (std::size_t i = 0; i < ex.size(); ++i) lw += (mask >> i) & 1U ? std::log(ex[i]) : std::log1p(-ex[i]);
            brute.push_back(lw);
        }
        std::sort(brute.begin(), brute.end(), std::greater<>());
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, total)(rng);
        const auto best = rfs::k_best_bernoulli_subsets(ex, k);
        if (best.size() != k) {
            r.max_error = kInf;
            continue;
        }
        for (std::size_t i = 0; i < k; ++i) {
            // Each realization's own weight must also match its inclusion pattern.
            double lw = 0.0;
            for (std::size_t j = 0; j < ex.size(); ++j) lw += best[i].included[j] ? std::log(ex[j]) : std::log1p(-ex[j]);
            r.max_error = std::max({r.max_error, std::abs(best[i].log_weight - brute[i]), std::abs(lw - brute[i])});
        }
    }
    finish(r);
    return r;
}

std::vector<std::string> oracle_names() { return {"ospa", "assignment", "subsets"}; }

OracleReport run_oracle(const std::string& name) {
    if (name == "ospa") return ospa_oracle();
    if (name == "assignment") return assignment_oracle();
    if (name == "subsets") return subsets_oracle();
    throw ValidationError("unknown oracle '" + name + "' (expected ospa, assignment or subsets)");
}

}  // namespace lrfs::sim
