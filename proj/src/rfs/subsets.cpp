#include "lrfs/rfs/subsets.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lrfs::rfs {

BernoulliSubsetEnumerator::BernoulliSubsetEnumerator(std::span<const double> existence)
    : best_(existence.size(), false) {
    std::vector<double> cost(existence.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < existence.size(); ++i) {
        const double r = existence[i];
        if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("existence probability outside [0,1]");
        best_[i] = r > 0.5;
        best_log_weight_ += best_[i] ? std::log(r) : std::log1p(-r);
        if (r > 0.0 && r < 1.0) cost[i] = std::abs(std::log(r) - std::log1p(-r));
    }
    for (std::size_t i = 0; i < existence.size(); ++i) {
        if (std::isfinite(cost[i])) order_.push_back(i);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
    for (std::size_t i : order_) cost_.push_back(cost[i]);

    if (std::isfinite(best_log_weight_)) push(0.0, {});
}

void BernoulliSubsetEnumerator::push(double cost, std::vector<std::size_t> flipped) {
    pending_.push(Node{cost, serial_++, std::move(flipped)});
}

double BernoulliSubsetEnumerator::peek_log_weight() const {
    if (pending_.empty()) return -std::numeric_limits<double>::infinity();
    return best_log_weight_ - pending_.top().cost;
}

BernoulliSubset BernoulliSubsetEnumerator::next() {
    Node node = pending_.top();
    pending_.pop();

    const std::size_t n = order_.size();
    if (node.flipped.empty()) {
        if (n > 0) push(cost_[0], {0});
    } else {
        const std::size_t last = node.flipped.back();
        if (last + 1 < n) {
            auto appended = node.flipped;
            appended.push_back(last + 1);
            push(node.cost + cost_[last + 1], std::move(appended));
            auto replaced = node.flipped;
            replaced.back() = last + 1;
            push(node.cost - cost_[last] + cost_[last + 1], std::move(replaced));
        }
    }

    BernoulliSubset out{best_, best_log_weight_ - node.cost};
    for (std::size_t pos : node.flipped) {
        const std::size_t i = order_[pos];
        out.included[i] = !out.included[i];
    }
    return out;
}

std::vector<BernoulliSubset> k_best_bernoulli_subsets(std::span<const double> existence, std::size_t k) {
    BernoulliSubsetEnumerator e(existence);
    std::vector<BernoulliSubset> out;
    while (out.size() < k && !e.done()) out.push_back(e.next());
    return out;
}

}  // namespace lrfs::rfs
