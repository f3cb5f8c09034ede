// Serial reference vs OpenMP kernels on densities from the desk scenario.

#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/fusion/consensus.hpp"
#include "lrfs/fusion/fusion.hpp"
#include "lrfs/sim/runner.hpp"
#include "lrfs/sim/truth.hpp"

#include <benchmark/benchmark.h>

using namespace lrfs;

namespace {

struct Fixture {
    sim::Scenario scenario;
    std::vector<rfs::MdGlmbDensity> posteriors;  // per node, after local updates
    rfs::MdGlmbDensity predicted;                // node 0, one step ahead
    std::vector<double> scan;                    // node 0's scan for that step
};

const Fixture& fixture() {
    static const Fixture f = [] {
        Fixture fx;
        fx.scenario = sim::load_scenario(std::string(LRFS_SCENARIO_DIR) + "/desk_small.yaml");
        const auto& s = fx.scenario;
        const auto truth = sim::generate_truth(s);
        auto cfg = s.filter;
        cfg.execution = Execution::Serial;
        fx.posteriors.assign(s.sensors.size(), rfs::MdGlmbDensity::no_objects());
        const int steps = 12;
        for (int k = 1; k <= steps; ++k) {
            const auto scans = sim::simulate_scans(s, truth[static_cast<std::size_t>(k - 1)], 3, k);
            for (std::size_t i = 0; i < fx.posteriors.size(); ++i) {
                fx.posteriors[i] = filters::mdglmb_update(
                    filters::mdglmb_predict(fx.posteriors[i], s.motion, s.birth, k, cfg), scans[i], s.sensors[i], cfg);
            }
        }
        fx.predicted = filters::mdglmb_predict(fx.posteriors[0], s.motion, s.birth, steps + 1, cfg);
        fx.scan = sim::simulate_scans(s, truth[static_cast<std::size_t>(steps)], 3, steps + 1)[0];
        return fx;
    }();
    return f;
}

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_Update(benchmark::State& state) {
    const auto& f = fixture();
    auto cfg = f.scenario.filter;
    cfg.execution = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(filters::mdglmb_update(f.predicted, f.scan, f.scenario.sensors[0], cfg));
}

void BM_Fusion(benchmark::State& state) {
    const auto& f = fixture();
    fusion::FusionOptions opts;
    opts.execution = mode(state);
    const double w = 1.0 / static_cast<double>(f.posteriors.size());
    std::vector<fusion::WeightedDensity<rfs::MdGlmbDensity>> in;
    for (const auto& p : f.posteriors) in.push_back({&p, w});
    for (auto _ : state) benchmark::DoNotOptimize(fusion::fuse_mdglmb(in, opts));
}

void BM_Consensus(benchmark::State& state) {
    const auto& f = fixture();
    const auto omega = fusion::metropolis_weights(f.scenario.graph);
    fusion::ConsensusOptions opts;
    opts.reduction = f.scenario.filter.reduction;
    opts.fusion.execution = mode(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fusion::consensus_run(f.posteriors, f.scenario.graph, omega, 3, opts));
    }
}

void BM_Trial(benchmark::State& state) {
    auto s = fixture().scenario;
    s.steps = 10;
    for (auto& t : s.trajectories) t.death_step = std::min(t.death_step, s.steps + 1);
    sim::RunOptions opts;
    opts.execution = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_trial(s, opts, 9));
}

}  // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_Update)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fusion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Consensus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
