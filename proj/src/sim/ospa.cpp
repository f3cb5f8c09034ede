#include "lrfs/sim/ospa.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/filters/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lrfs::sim {

namespace {

void check_params(double c, double p) {
    if (!(c > 0.0)) throw ValidationError("OSPA cutoff must be positive");
    if (!(p >= 1.0)) throw ValidationError("OSPA order must be >= 1");
}

double cut_cost(const Point& a, const Point& b, double c, double p) {
    return std::pow(std::min(c, (a - b).norm()), p);
}

OspaResult finish(double loc_sum, std::size_t m, std::size_t n, double c, double p) {
    const double card_sum = std::pow(c, p) * static_cast<double>(n - m);
    const double nn = static_cast<double>(n);
    return {std::pow((loc_sum + card_sum) / nn, 1.0 / p), std::pow(loc_sum / nn, 1.0 / p),
            std::pow(card_sum / nn, 1.0 / p)};
}

}  // namespace

OspaResult ospa(const std::vector<Point>& X, const std::vector<Point>& Y, double c, double p) {
    check_params(c, p);
    const auto& small = X.size() <= Y.size() ? X : Y;
    const auto& large = X.size() <= Y.size() ? Y : X;
    const std::size_t m = small.size();
    const std::size_t n = large.size();
    if (n == 0) return {};
    if (m == 0) return finish(0.0, 0, n, c, p);

    gm::Matrix cost(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cut_cost(small[i], large[j], c, p);
        }
    }
    const auto cols = filters::hungarian(cost);
    if (!cols) throw Error(ErrorCategory::Runtime, "OSPA assignment failed");
    double loc = 0.0;
    for (std::size_t i = 0; i < m; ++i) loc += cost(static_cast<Eigen::Index>(i), (*cols)[i]);
    return finish(loc, m, n, c, p);
}

std::vector<Point> positions(const std::vector<gm::Vector>& states) {
    std::vector<Point> out;
    out.reserve(states.size());
    for (const auto& x : states) out.emplace_back(x(0), x(2));
    return out;
}

OspaResult ospa_brute_force(const std::vector<Point>& X, const std::vector<Point>& Y, double c, double p) {
    check_params(c, p);
    const auto& small = X.size() <= Y.size() ? X : Y;
    const auto& large = X.size() <= Y.size() ? Y : X;
    const std::size_t m = small.size();
    const std::size_t n = large.size();
    if (n == 0) return {};

    // Every permutation of the larger set; its first m entries are an injection.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += cut_cost(small[i], large[perm[i]], c, p);
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return finish(best, m, n, c, p);
}

}  // namespace lrfs::sim
