#include "lrfs/fusion/consensus.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/rfs/operations.hpp"
#include "lrfs/rfs/serialization.hpp"

namespace lrfs::fusion {

ExchangeStats& ExchangeStats::operator+=(const ExchangeStats& o) {
    broadcasts += o.broadcasts;
    nominal_bytes += o.nominal_bytes;
    serialized_bytes += o.serialized_bytes;
    empty_intersections += o.empty_intersections;
    return *this;
}

namespace {

rfs::MdGlmbDensity fuse_node(std::span<const WeightedDensity<rfs::MdGlmbDensity>> in, const ConsensusOptions& o,
                             FusionDiagnostics& diag) {
    return fuse_mdglmb(in, o.fusion, &diag);
}

rfs::LmbDensity fuse_node(std::span<const WeightedDensity<rfs::LmbDensity>> in, const ConsensusOptions& o,
                          FusionDiagnostics&) {
    return fuse_lmb(in, o.fusion);
}

template <typename Density>
std::vector<Density> run(std::vector<Density> nodes, const NetworkGraph& g, const ConsensusMatrix& omega, int rounds,
                         const ConsensusOptions& options, ExchangeStats* stats) {
    if (rounds < 0) throw ValidationError("consensus rounds must be non-negative");
    if (nodes.size() != g.size()) throw ValidationError("one density per network node required");
    validate_consensus_matrix(omega, g);

    // Inner fusions run serially when the nodes themselves are spread over threads.
    ConsensusOptions inner = options;
    if (options.fusion.execution == Execution::Parallel && nodes.size() > 1) inner.fusion.execution = Execution::Serial;

    for (int round = 0; round < rounds; ++round) {
        if (stats) {
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (g.out_neighbours(i).empty()) continue;
                ++stats->broadcasts;
                stats->nominal_bytes += rfs::nominal_exchange_bytes(nodes[i]);
                if (options.measure_serialized_bytes) stats->serialized_bytes += rfs::serialized_bytes(nodes[i]);
            }
        }
        const std::vector<Density> previous = std::move(nodes);
        nodes.assign(previous.size(), Density{});
        std::vector<FusionDiagnostics> diag(previous.size());
        parallel_for(previous.size(), options.fusion.execution, [&](std::size_t i) {
            std::vector<WeightedDensity<Density>> in;
            for (int j : g.in_neighbours(i)) {
                const double w = omega(static_cast<Eigen::Index>(i), j);
                if (w > 0.0) in.push_back({&previous[static_cast<std::size_t>(j)], w});
            }
            Density fused = fuse_node(in, inner, diag[i]);
            rfs::reduce_track_pdfs(fused, options.reduction, inner.fusion.execution);
            nodes[i] = std::move(fused);
        });
        if (stats) {
            for (const auto& d : diag) stats->empty_intersections += d.empty_intersections;
        }
    }
    return nodes;
}

}  // namespace

std::vector<rfs::MdGlmbDensity> consensus_run(std::vector<rfs::MdGlmbDensity> nodes, const NetworkGraph& g,
                                              const ConsensusMatrix& omega, int rounds,
                                              const ConsensusOptions& options, ExchangeStats* stats) {
    return run(std::move(nodes), g, omega, rounds, options, stats);
}

std::vector<rfs::LmbDensity> consensus_run(std::vector<rfs::LmbDensity> nodes, const NetworkGraph& g,
                                           const ConsensusMatrix& omega, int rounds, const ConsensusOptions& options,
                                           ExchangeStats* stats) {
    return run(std::move(nodes), g, omega, rounds, options, stats);
}

}  // namespace lrfs::fusion
