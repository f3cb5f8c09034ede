#pragma once

#include "lrfs/gm/gaussian.hpp"

#include <vector>

namespace lrfs::sim {

/// 2-D positions [p_x, p_y].
using Point = Eigen::Vector2d;

/// OSPA distance with its localization / cardinality split:
/// total^p = loc^p + card^p.
struct OspaResult {
    double total = 0.0;
    double localization = 0.0;
    double cardinality = 0.0;
};

/// Optimal subpattern assignment distance with Euclidean base distance,
/// cutoff c > 0 and order p ≥ 1. For |X| = m ≤ n = |Y|:
///   d = ( (min_π Σ_i min(c, ‖x_i − y_π(i)‖)^p + c^p (n − m)) / n )^(1/p),
/// and 0 when both sets are empty. Symmetric in X and Y.
[[nodiscard]] OspaResult ospa(const std::vector<Point>& X, const std::vector<Point>& Y, double c, double p);

/// Positions [p_x, p_y] of 4-D states [p_x, v_x, p_y, v_y].
[[nodiscard]] std::vector<Point> positions(const std::vector<gm::Vector>& states);

/// Same metric by enumerating every injection of the smaller set (test oracle).
[[nodiscard]] OspaResult ospa_brute_force(const std::vector<Point>& X, const std::vector<Point>& Y, double c,
                                          double p);

}  // namespace lrfs::sim
