#pragma once

#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace lrfs::rfs {

/// One realization of a list of independent Bernoullis.
struct BernoulliSubset {
    std::vector<bool> included;  // aligned with the existence list
    double log_weight = 0.0;     // Π_{in} r · Π_{out} (1 − r), in log
};

/// Lazily enumerates the realizations of independent Bernoullis in order of
/// decreasing probability.
///
/// The most probable realization includes exactly the entries with r > ½.
/// Any other realization differs from it by a set F of flipped entries and
/// has log-probability best − Σ_{i∈F} c_i with c_i = |log r_i − log(1 − r_i)|,
/// so ranking realizations is ranking subsets F by cost sum. Those are
/// generated with the usual heap scheme over costs sorted ascending: from a
/// subset whose largest index is j, either append j+1 or replace j by j+1.
/// Entries with r ∈ {0, 1} have infinite flip cost and are never flipped.
/// Equal costs are resolved by generation order, which is deterministic.
class BernoulliSubsetEnumerator {
public:
    explicit BernoulliSubsetEnumerator(std::span<const double> existence);

    [[nodiscard]] bool done() const { return pending_.empty(); }
    /// Log-probability of the next realization; −∞ once exhausted.
    [[nodiscard]] double peek_log_weight() const;
    /// Pops the next realization. Precondition: !done().
    BernoulliSubset next();

private:
    struct Node {
        double cost;
        std::size_t serial;
        std::vector<std::size_t> flipped;  // positions into order_, ascending
    };
    struct Later {
        bool operator()(const Node& a, const Node& b) const {
            if (a.cost != b.cost) return a.cost > b.cost;
            return a.serial > b.serial;
        }
    };

    void push(double cost, std::vector<std::size_t> flipped);

    std::vector<bool> best_;
    double best_log_weight_ = 0.0;
    std::vector<std::size_t> order_;  // flippable entries sorted by cost
    std::vector<double> cost_;        // cost of order_[i]
    std::priority_queue<Node, std::vector<Node>, Later> pending_;
    std::size_t serial_ = 0;
};

/// Up to `k` most probable realizations, most probable first.
[[nodiscard]] std::vector<BernoulliSubset> k_best_bernoulli_subsets(std::span<const double> existence,
                                                                    std::size_t k);

}  // namespace lrfs::rfs
