#pragma once

#include "lrfs/fusion/fusion.hpp"
#include "lrfs/fusion/graph.hpp"

#include <cstddef>
#include <vector>

namespace lrfs::fusion {

struct ConsensusOptions {
    /// Applied to every track pdf after each round's fusion.
    gm::ReductionParams reduction;
    FusionOptions fusion;
    /// Also measure the encoded size of every broadcast (costly for large densities).
    bool measure_serialized_bytes = false;
};

/// Communication cost of consensus rounds. Every node broadcasts its current
/// density once per round to all of its out-neighbours.
struct ExchangeStats {
    std::size_t broadcasts = 0;
    std::size_t nominal_bytes = 0;     // 4-byte-float accounting per broadcast
    std::size_t serialized_bytes = 0;  // JSON size, when measured
    std::size_t empty_intersections = 0;

    ExchangeStats& operator+=(const ExchangeStats& o);
};

/// N synchronous rounds: node i replaces its density by the fusion of its
/// in-neighbours' previous-round densities with weights Ω(i, ·), then reduces
/// each track pdf. Nodes within a round are fused concurrently.
[[nodiscard]] std::vector<rfs::MdGlmbDensity> consensus_run(std::vector<rfs::MdGlmbDensity> nodes,
                                                            const NetworkGraph& g, const ConsensusMatrix& omega,
                                                            int rounds, const ConsensusOptions& options = {},
                                                            ExchangeStats* stats = nullptr);

[[nodiscard]] std::vector<rfs::LmbDensity> consensus_run(std::vector<rfs::LmbDensity> nodes, const NetworkGraph& g,
                                                         const ConsensusMatrix& omega, int rounds,
                                                         const ConsensusOptions& options = {},
                                                         ExchangeStats* stats = nullptr);

}  // namespace lrfs::fusion
