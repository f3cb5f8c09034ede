#include "lrfs/fusion/graph.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace lrfs::fusion {

namespace {

std::string arc_name(int from, int to) { return "(" + std::to_string(from) + ", " + std::to_string(to) + ")"; }

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& out, std::size_t src) {
    std::vector<int> dist(out.size(), -1);
    std::deque<std::size_t> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (int v : out[u]) {
            if (dist[static_cast<std::size_t>(v)] >= 0) continue;
            dist[static_cast<std::size_t>(v)] = dist[u] + 1;
            queue.push_back(static_cast<std::size_t>(v));
        }
    }
    return dist;
}

}  // namespace

NetworkGraph::NetworkGraph(std::size_t nodes, std::vector<std::pair<int, int>> arcs) : in_(nodes) {
    if (nodes == 0) throw ValidationError("network needs at least one node");
    for (std::size_t i = 0; i < nodes; ++i) in_[i].push_back(static_cast<int>(i));
    const int n = static_cast<int>(nodes);
    for (const auto& [from, to] : arcs) {
        if (from < 0 || from >= n || to < 0 || to >= n) {
            throw ValidationError("arc " + arc_name(from, to) + " references a node outside 0.." + std::to_string(n - 1));
        }
        in_[static_cast<std::size_t>(to)].push_back(from);
    }
    for (auto& v : in_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

NetworkGraph NetworkGraph::undirected(std::size_t nodes, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& [a, b] : edges) {
        if (a == b) throw ValidationError("edge " + arc_name(a, b) + " is a self-loop; self-loops are implicit");
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    return NetworkGraph(nodes, std::move(arcs));
}

std::vector<int> NetworkGraph::out_neighbours(std::size_t i) const {
    std::vector<int> out;
    for (std::size_t j = 0; j < in_.size(); ++j) {
        if (j != i && has_arc(static_cast<int>(i), static_cast<int>(j))) out.push_back(static_cast<int>(j));
    }
    return out;
}

bool NetworkGraph::has_arc(int from, int to) const {
    const auto& v = in_[static_cast<std::size_t>(to)];
    return std::binary_search(v.begin(), v.end(), from);
}

bool NetworkGraph::is_symmetric() const {
    for (std::size_t i = 0; i < in_.size(); ++i) {
        for (int j : in_[i]) {
            if (!has_arc(static_cast<int>(i), j)) return false;
        }
    }
    return true;
}

bool NetworkGraph::is_strongly_connected() const {
    std::vector<std::vector<int>> out(in_.size()), rev(in_.size());
    for (std::size_t i = 0; i < in_.size(); ++i) {
        for (int j : in_[i]) {
            out[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
            rev[i].push_back(j);
        }
    }
    const auto reach_all = [](const std::vector<int>& d) {
        return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
    };
    return reach_all(bfs_distances(out, 0)) && reach_all(bfs_distances(rev, 0));
}

std::size_t NetworkGraph::diameter() const {
    std::vector<std::vector<int>> out(in_.size());
    for (std::size_t i = 0; i < in_.size(); ++i) {
        for (int j : in_[i]) out[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    }
    int best = 0;
    for (std::size_t s = 0; s < in_.size(); ++s) {
        for (int d : bfs_distances(out, s)) {
            if (d < 0) throw ValidationError("diameter of a graph that is not strongly connected");
            best = std::max(best, d);
        }
    }
    return static_cast<std::size_t>(best);
}

ConsensusMatrix metropolis_weights(const NetworkGraph& g) {
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (int j : g.in_neighbours(i)) {
            if (!g.has_arc(static_cast<int>(i), j)) {
                throw UndirectedRequiredError("arc " + arc_name(j, static_cast<int>(i)) + " has no reverse arc "
                                              + arc_name(static_cast<int>(i), j));
            }
        }
    }
    if (!g.is_strongly_connected()) throw ValidationError("network graph is not connected");

    ConsensusMatrix omega = ConsensusMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (int j : g.in_neighbours(i)) {
            if (static_cast<std::size_t>(j) == i) continue;
            const double deg = static_cast<double>(
                std::max(g.in_neighbours(i).size(), g.in_neighbours(static_cast<std::size_t>(j)).size()));
            const double w = 1.0 / (1.0 + deg);
            omega(static_cast<Eigen::Index>(i), j) = w;
            off += w;
        }
        omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 - off;
    }
    return omega;
}

void validate_consensus_matrix(const ConsensusMatrix& omega, const NetworkGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (omega.rows() != n || omega.cols() != n) throw ValidationError("consensus matrix does not match the graph");
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (omega(i, j) < 0.0) throw ValidationError("consensus matrix has a negative entry");
            if (omega(i, j) > 0.0 && !g.has_arc(static_cast<int>(j), static_cast<int>(i))) {
                throw ValidationError("consensus weight on missing arc " + arc_name(static_cast<int>(j), static_cast<int>(i)));
            }
        }
        if (std::abs(omega.row(i).sum() - 1.0) > 1e-12) throw ValidationError("consensus matrix row does not sum to 1");
    }
}

PowerCheck consensus_matrix_power_check(const ConsensusMatrix& omega, int n) {
    if (n < 0) throw ValidationError("matrix power must be non-negative");
    const Eigen::Index size = omega.rows();
    ConsensusMatrix power = ConsensusMatrix::Identity(size, size);
    for (int i = 0; i < n; ++i) power = power * omega;

    PowerCheck out;
    out.max_deviation = (power.array() - 1.0 / static_cast<double>(size)).abs().maxCoeff();

    // Wielandt: a primitive matrix has a positive power no higher than (s−1)² + 1.
    Eigen::MatrixXi pattern = (omega.array() > 0.0).cast<int>();
    Eigen::MatrixXi reach = pattern;
    const Eigen::Index bound = (size - 1) * (size - 1) + 1;
    for (Eigen::Index k = 1; k <= bound; ++k) {
        if ((reach.array() > 0).all()) {
            out.primitive = true;
            break;
        }
        reach = ((reach * pattern).array() > 0).cast<int>();
    }
    return out;
}

}  // namespace lrfs::fusion
