#pragma once

#include "lrfs/gm/gaussian.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace lrfs::fusion {

/// Directed sensor network on nodes 0 … n−1. An arc (j, i) means node i
/// receives from node j. Every node is its own in-neighbour.
class NetworkGraph {
public:
    NetworkGraph() = default;
    /// Throws ValidationError naming the arc if an endpoint is out of range.
    NetworkGraph(std::size_t nodes, std::vector<std::pair<int, int>> arcs);

    /// Both directions of every edge.
    [[nodiscard]] static NetworkGraph undirected(std::size_t nodes, const std::vector<std::pair<int, int>>& edges);

    [[nodiscard]] std::size_t size() const { return in_.size(); }
    /// Sorted in-neighbours of `i`, including `i`.
    [[nodiscard]] const std::vector<int>& in_neighbours(std::size_t i) const { return in_[i]; }
    /// Nodes receiving from `i`, excluding `i`.
    [[nodiscard]] std::vector<int> out_neighbours(std::size_t i) const;
    [[nodiscard]] bool has_arc(int from, int to) const;

    /// Every arc has its reverse.
    [[nodiscard]] bool is_symmetric() const;
    [[nodiscard]] bool is_strongly_connected() const;
    /// Longest shortest directed path; throws if not strongly connected.
    [[nodiscard]] std::size_t diameter() const;

private:
    std::vector<std::vector<int>> in_;
};

using ConsensusMatrix = gm::Matrix;

/// ω(i,j) = 1 / (1 + max(|N(i)|, |N(j)|)) for neighbours j ≠ i, the diagonal
/// taking the remainder of each row; neighbourhood sizes include the node.
/// Throws UndirectedRequiredError if the graph is not symmetric and
/// ValidationError if it is not connected.
[[nodiscard]] ConsensusMatrix metropolis_weights(const NetworkGraph& g);

/// Rows sum to one within 1e-12, entries non-negative, and ω(i,j) = 0 unless
/// j is an in-neighbour of i. Throws ValidationError otherwise.
void validate_consensus_matrix(const ConsensusMatrix& omega, const NetworkGraph& g);

struct PowerCheck {
    double max_deviation = 0.0;  // max_ij |(Ωⁿ)_ij − 1/|N||
    bool primitive = false;      // some power of Ω is entrywise positive
};

[[nodiscard]] PowerCheck consensus_matrix_power_check(const ConsensusMatrix& omega, int n);

}  // namespace lrfs::fusion
