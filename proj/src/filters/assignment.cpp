#include "lrfs/filters/assignment.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lrfs::filters {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Scores within this relative distance of the k-th are treated as tied when
/// deciding how far past k the search must continue.
constexpr double kTieSlack = 1e-9;

bool canonical_less(const Assignment& a, const Assignment& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.cols < b.cols;
}

}  // namespace

std::optional<std::vector<int>> hungarian(const gm::Matrix& cost) {
    // Shortest augmenting path with row/column potentials, rows ≤ columns.
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    if (n == 0) return std::vector<int>{};
    if (n > m) return std::nullopt;

    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> match(m + 1, 0), way(m + 1, 0);  // match[j]: row (1-based) in column j
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double c = cost(i0 - 1, j - 1);
                if (c != kInf) {
                    const double cur = c - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 < 0 || delta == kInf) return std::nullopt;
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> cols(n, -1);
    for (int j = 1; j <= m; ++j) {
        if (match[j] != 0) cols[match[j] - 1] = j - 1;
    }
    return cols;
}

double assignment_score(const gm::Matrix& score, const std::vector<int>& cols) {
    double s = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) s += score(static_cast<Eigen::Index>(i), cols[i]);
    return s;
}

void sort_canonical(std::vector<Assignment>& assignments) {
    std::sort(assignments.begin(), assignments.end(), canonical_less);
}

std::vector<Assignment> ranked_assignments(const gm::Matrix& score, std::size_t k) {
    if (k == 0) throw ValidationError("ranked_assignments needs k >= 1");
    const Eigen::Index n = score.rows();
    const gm::Matrix cost = -score;  // −(−∞) = +∞ marks forbidden entries

    struct Node {
        Assignment best;
        gm::Matrix cost;     // with this subproblem's constraints applied
        Eigen::Index fixed;  // rows [0, fixed) are forced
    };
    struct Worse {
        bool operator()(const Node& a, const Node& b) const { return canonical_less(b.best, a.best); }
    };
    std::priority_queue<Node, std::vector<Node>, Worse> queue;

    const auto solve = [&](gm::Matrix c, Eigen::Index fixed) {
        auto cols = hungarian(c);
        if (!cols) return;
        Assignment a{std::move(*cols), 0.0};
        a.score = assignment_score(score, a.cols);
        if (a.score == -kInf) return;
        queue.push(Node{std::move(a), std::move(c), fixed});
    };
    solve(cost, 0);

    std::vector<Assignment> out;
    while (!queue.empty()) {
        if (out.size() >= k) {
            const double kth = out[k - 1].score;
            const double next = queue.top().best.score;
            if (next < kth - kTieSlack * std::max(1.0, std::abs(kth))) break;
        }
        Node node = queue.top();
        queue.pop();

        // Partition the remaining solutions of this subproblem: child t keeps
        // rows < t on the found columns and forbids row t's column.
        gm::Matrix c = node.cost;
        for (Eigen::Index t = node.fixed; t < n; ++t) {
            const int col = node.best.cols[static_cast<std::size_t>(t)];
            gm::Matrix child = c;
            child(t, col) = kInf;
            solve(std::move(child), t);
            // force row t to col for the subsequent children
            const double keep = c(t, col);
            c.row(t).setConstant(kInf);
            c.col(col).setConstant(kInf);
            c(t, col) = keep;
        }
        out.push_back(std::move(node.best));
    }

    sort_canonical(out);
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<Assignment> all_assignments(const gm::Matrix& score) {
    const Eigen::Index n = score.rows();
    const Eigen::Index m = score.cols();
    std::vector<Assignment> out;
    std::vector<int> cols(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(m), 0);

    const auto recurse = [&](auto&& self, Eigen::Index row) -> void {
        if (row == n) {
            out.push_back(Assignment{cols, assignment_score(score, cols)});
            return;
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            if (used[static_cast<std::size_t>(j)] || score(row, j) == -kInf) continue;
            used[static_cast<std::size_t>(j)] = 1;
            cols[static_cast<std::size_t>(row)] = static_cast<int>(j);
            self(self, row + 1);
            used[static_cast<std::size_t>(j)] = 0;
        }
    };
    recurse(recurse, 0);
    sort_canonical(out);
    return out;
}

}  // namespace lrfs::filters
