#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/fusion/consensus.hpp"
#include "lrfs/rfs/operations.hpp"
#include "lrfs/rfs/serialization.hpp"
#include "lrfs/sim/runner.hpp"
#include "lrfs/sim/truth.hpp"

#include <gtest/gtest.h>

#include <omp.h>

#include <stdexcept>

using namespace lrfs;

namespace {

sim::Scenario desk() { return sim::load_scenario(std::string(LRFS_SCENARIO_DIR) + "/desk_small.yaml"); }

/// Per-node local posteriors after `steps` predict/update cycles, without fusion.
std::vector<rfs::MdGlmbDensity> local_posteriors(const sim::Scenario& s, int steps) {
    const auto truth = sim::generate_truth(s);
    auto cfg = s.filter;
    cfg.execution = Execution::Serial;
    std::vector<rfs::MdGlmbDensity> nodes(s.sensors.size(), rfs::MdGlmbDensity::no_objects());
    for (int k = 1; k <= steps; ++k) {
        const auto scans = sim::simulate_scans(s, truth[static_cast<std::size_t>(k - 1)], 11, k);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            nodes[i] = filters::mdglmb_update(filters::mdglmb_predict(nodes[i], s.motion, s.birth, k, cfg), scans[i],
                                              s.sensors[i], cfg);
        }
    }
    return nodes;
}

std::string dump(const rfs::MdGlmbDensity& d) { return rfs::to_json(d).dump(); }

}  // namespace

TEST(Parallel, ExceptionOfLowestIndexIsRethrown) {
    for (auto exec : {Execution::Serial, Execution::Parallel}) {
        try {
            parallel_for(50, exec, [](std::size_t i) {
                if (i == 7 || i == 31) throw std::runtime_error("index " + std::to_string(i));
            });
            FAIL() << "no exception";
        } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "index 7");
        }
    }
}

TEST(Parallel, UpdateMatchesSerial) {
    const auto s = desk();
    const auto nodes = local_posteriors(s, 6);
    const auto truth = sim::generate_truth(s);
    const auto scans = sim::simulate_scans(s, truth[6], 11, 7);
    auto cfg = s.filter;
    cfg.execution = Execution::Serial;
    const auto pred = filters::mdglmb_predict(nodes[0], s.motion, s.birth, 7, cfg);
    const auto serial = filters::mdglmb_update(pred, scans[0], s.sensors[0], cfg);
    cfg.execution = Execution::Parallel;
    omp_set_num_threads(4);
    const auto parallel = filters::mdglmb_update(pred, scans[0], s.sensors[0], cfg);
    EXPECT_GT(serial.size(), 1U);
    EXPECT_EQ(dump(serial), dump(parallel));
}

TEST(Parallel, FusionAndConsensusMatchSerial) {
    const auto s = desk();
    const auto nodes = local_posteriors(s, 6);
    const auto omega = fusion::metropolis_weights(s.graph);
    omp_set_num_threads(4);

    fusion::ConsensusOptions opts;
    opts.reduction = s.filter.reduction;
    opts.fusion.execution = Execution::Serial;
    fusion::ExchangeStats serial_stats;
    const auto serial = fusion::consensus_run(nodes, s.graph, omega, 3, opts, &serial_stats);
    opts.fusion.execution = Execution::Parallel;
    fusion::ExchangeStats parallel_stats;
    const auto parallel = fusion::consensus_run(nodes, s.graph, omega, 3, opts, &parallel_stats);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(dump(serial[i]), dump(parallel[i])) << "node " << i;
    EXPECT_EQ(serial_stats.nominal_bytes, parallel_stats.nominal_bytes);
}

TEST(Parallel, ExperimentIndependentOfWorkerCount) {
    auto s = desk();
    s.steps = 8;
    for (auto& t : s.trajectories) t.death_step = std::min(t.death_step, 9);
    sim::RunOptions opts;
    opts.execution = Execution::Serial;
    const auto serial = sim::run_experiment(s, opts, 3, 42);
    opts.execution = Execution::Parallel;
    omp_set_num_threads(3);
    const auto parallel = sim::run_experiment(s, opts, 3, 42);
    ASSERT_EQ(serial.network.size(), parallel.network.size());
    for (std::size_t k = 0; k < serial.network.size(); ++k) {
        EXPECT_EQ(serial.network[k].ospa, parallel.network[k].ospa);
        EXPECT_EQ(serial.network[k].est_card_mean, parallel.network[k].est_card_mean);
    }
    EXPECT_EQ(serial.trial_seeds, parallel.trial_seeds);
}
