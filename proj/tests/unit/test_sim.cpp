#include "lrfs/errors.hpp"
#include "lrfs/sim/oracles.hpp"
#include "lrfs/sim/ospa.hpp"
#include "lrfs/sim/runner.hpp"
#include "lrfs/sim/scenario.hpp"
#include "lrfs/sim/truth.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace lrfs;
using sim::Point;

namespace {

std::string scenario_path(const std::string& name) { return std::string(LRFS_SCENARIO_DIR) + "/" + name + ".yaml"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    if (pos == std::string::npos) throw std::logic_error("fixture text not found: " + from);
    return s.replace(pos, from.size(), to);
}

/// Expects parse failure with a message containing every fragment.
void expect_parse_error(const std::string& text, std::initializer_list<std::string> fragments) {
    try {
        (void)sim::parse_scenario(text, "fixture.yaml");
        ADD_FAILURE() << "no error raised";
    } catch (const ValidationError& e) {
        for (const auto& f : fragments) EXPECT_NE(std::string(e.what()).find(f), std::string::npos) << e.what();
    }
}

/// One object seen by a range sensor and a bearing sensor, no clutter.
const char* kTwoNodeScenario = R"(
schema_version: 1
name: two_node
area: {x_min: 0, x_max: 10000, y_min: 0, y_max: 10000}
sampling_interval: 5
steps: 15
motion: {sigma_w: 1, survival_probability: 0.99}
birth:
  existence: 0.2
  covariance_diag: [1.0e6, 1.0e2, 1.0e6, 1.0e2]
  components:
    - {index: 1, mean: [5000, 0, 5000, 0]}
sensors:
  - {kind: toa, position: [0, 5000], noise_std: 20, clutter_rate: 0, detection_probability: 0.99}
  - {kind: doa, position: [10000, 5000], noise_std_deg: 0.2, clutter_rate: 0, detection_probability: 0.99}
network: {nodes: 2, edges: [[0, 1]]}
trajectories:
  - {birth_step: 1, death_step: 16, initial_state: [5300, 2, 4700, 2]}
filter: {max_hypotheses: 50, assignments_per_hypothesis: 10, max_components: 5}
consensus: {steps: 1}
monte_carlo: {trials: 2, seed: 3}
)";

}  // namespace

TEST(Scenario, DeskSmallLoads) {
    const auto s = sim::load_scenario(scenario_path("desk_small"));
    EXPECT_EQ(s.sensors.size(), 3U);
    EXPECT_EQ(s.trajectories.size(), 2U);
    EXPECT_EQ(s.birth.entries.size(), 3U);
    EXPECT_EQ(s.graph.diameter(), 2U);
    EXPECT_NEAR(s.sensors[1].noise_std, std::numbers::pi / 180.0, 1e-15);
    EXPECT_NEAR(s.sensors[0].space.hi, s.area.diagonal(), 1e-9);
    EXPECT_EQ(s.filter.reduction.max_components, 10U);
}

TEST(Scenario, PaperHighSnrCounts) {
    const auto s = sim::load_scenario(scenario_path("paper_highsnr"));
    int toa = 0;
    for (const auto& sensor : s.sensors) toa += sensor.kind == sensors::SensorKind::Toa;
    EXPECT_EQ(toa, 4);
    EXPECT_EQ(s.sensors.size(), 7U);
    EXPECT_EQ(s.birth.entries.size(), 10U);
    EXPECT_EQ(s.trajectories.size(), 5U);
    EXPECT_EQ(s.steps, 200);
    for (const auto& b : s.birth.entries) EXPECT_DOUBLE_EQ(b.existence, 0.09);
    EXPECT_EQ(s.graph.diameter(), 3U);
}

TEST(Scenario, PaperRendezvous) {
    const auto s = sim::load_scenario(scenario_path("paper_highsnr"));
    const auto truth = sim::generate_truth(s);
    double closest = 1e300;
    const auto& at130 = truth[129];
    for (std::size_t i = 0; i < at130.size(); ++i)
        for (std::size_t j = i + 1; j < at130.size(); ++j)
            closest = std::min(closest, std::hypot(at130[i].state(0) - at130[j].state(0), at130[i].state(2) - at130[j].state(2)));
    EXPECT_LT(closest, 200.0);
}

TEST(Scenario, ErrorsNameFieldAndLine) {
    const std::string base = read_file(scenario_path("desk_small"));
    expect_parse_error(replace(base, "death_step: 41\n    initial_state: [2000", "death_step: 1\n    initial_state: [2000"),
                       {"fixture.yaml:", "trajectories[0].death_step", "must exceed birth_step"});
    expect_parse_error(replace(base, "kind: doa", "kind: sonar"), {"fixture.yaml:19:", "sensors[1]"});
    expect_parse_error(replace(base, "edges: [[0, 1], [1, 2]]", "edges: [[0, 1]]"), {"not connected"});
    expect_parse_error(replace(base, "edges: [[0, 1], [1, 2]]", "edges: [[0, 1], [1, 7]]"), {"(1, 7)"});
    expect_parse_error(replace(base, "steps: 40", "steps: 0"), {"field 'steps'"});
    expect_parse_error(replace(base, "schema_version: 1", "schema_version: 9"), {"schema_version"});
    expect_parse_error(replace(base, "nodes: 3", "nodes: 2"), {"network.nodes"});
    expect_parse_error(replace(base, "noise_std: 100, clutter_rate: 5, detection_probability: 0.99}\n  - {kind: doa",
                               "noise_std_deg: 1, clutter_rate: 5, detection_probability: 0.99}\n  - {kind: doa"),
                       {"only valid for doa"});
    expect_parse_error(replace(base, "initial_state: [2000, 20, 14000, -5]", "initial_state: [2000, -80, 14000, -5]"),
                       {"leaves the surveillance area"});
    expect_parse_error("a: [1, 2", {"fixture.yaml:"});
}

TEST(Scenario, EmptyTrajectoryListIsValid) {
    const std::string base = read_file(scenario_path("desk_small"));
    const auto start = base.find("trajectories:");
    const auto end = base.find("filter:");
    const std::string text = base.substr(0, start) + "trajectories: []\n\n" + base.substr(end);
    const auto s = sim::parse_scenario(text);
    EXPECT_TRUE(s.trajectories.empty());
    for (const auto& t : sim::generate_truth(s)) EXPECT_TRUE(t.empty());
}

TEST(Truth, PiecewiseConstantVelocity) {
    sim::Trajectory t;
    t.label = {3, 1};
    t.birth_step = 3;
    t.death_step = 10;
    t.initial_state = gm::Vector(4);
    t.initial_state << 0, 1, 0, 2;
    t.segments = {{6, -1, 0}};
    const auto x5 = sim::trajectory_state(t, 5, 5.0);
    EXPECT_DOUBLE_EQ(x5(0), 10.0);
    EXPECT_DOUBLE_EQ(x5(2), 20.0);
    const auto x7 = sim::trajectory_state(t, 7, 5.0);
    EXPECT_DOUBLE_EQ(x7(0), 0.0);  // two steps back at −1 m/s
    EXPECT_DOUBLE_EQ(x7(1), -1.0);
    EXPECT_DOUBLE_EQ(x7(2), 20.0);
    EXPECT_THROW((void)sim::trajectory_state(t, 10, 5.0), ValidationError);
    EXPECT_THROW((void)sim::trajectory_state(t, 2, 5.0), ValidationError);
}

TEST(Ospa, Fixtures) {
    const std::vector<Point> none;
    const std::vector<Point> one = {Point(0, 0)};
    const std::vector<Point> shifted = {Point(60, 80)};
    EXPECT_EQ(sim::ospa(none, none, 600, 2).total, 0.0);
    EXPECT_DOUBLE_EQ(sim::ospa(one, none, 600, 2).total, 600.0);
    EXPECT_DOUBLE_EQ(sim::ospa(one, none, 600, 2).cardinality, 600.0);
    EXPECT_NEAR(sim::ospa(one, shifted, 600, 2).total, 100.0, 1e-12);
    EXPECT_NEAR(sim::ospa(one, shifted, 600, 2).localization, 100.0, 1e-12);
    EXPECT_THROW((void)sim::ospa(one, one, 0, 2), ValidationError);
    EXPECT_THROW((void)sim::ospa(one, one, 600, 0.5), ValidationError);
}

TEST(Ospa, MetricPropertiesAndBruteForce) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1500);
    std::uniform_int_distribution<int> n(0, 4);
    const auto draw = [&] {
        std::vector<Point> s(static_cast<std::size_t>(n(rng)));
        for (auto& p : s) p = Point(u(rng), u(rng));
        return s;
    };
    for (int t = 0; t < 200; ++t) {
        const auto X = draw(), Y = draw(), W = draw();
        const auto xy = sim::ospa(X, Y, 600, 2);
        EXPECT_NEAR(xy.total, sim::ospa(Y, X, 600, 2).total, 1e-9);
        EXPECT_NEAR(xy.total, ref::ospa_reference(X, Y, 600, 2), 1e-9);
        EXPECT_NEAR(xy.total * xy.total, xy.localization * xy.localization + xy.cardinality * xy.cardinality, 1e-6);
        EXPECT_LE(xy.total, sim::ospa(X, W, 600, 2).total + sim::ospa(W, Y, 600, 2).total + 1e-9);
        EXPECT_NEAR(sim::ospa(X, X, 600, 2).total, 0.0, 1e-12);
    }
}

TEST(Oracles, AllPass) {
    for (const auto& name : sim::oracle_names()) {
        const auto r = sim::run_oracle(name);
        EXPECT_TRUE(r.passed) << name << " max error " << r.max_error;
        EXPECT_GT(r.cases, 0U);
    }
    EXPECT_THROW((void)sim::run_oracle("nope"), ValidationError);
}

TEST(Runner, SeedsAreDistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < 1000; ++i) seen.insert(sim::trial_seed(1, i));
    EXPECT_EQ(seen.size(), 1000U);
    EXPECT_EQ(sim::trial_seed(1, 5), sim::trial_seed(1, 5));
    EXPECT_NE(sim::trial_seed(1, 5), sim::trial_seed(2, 5));
    EXPECT_NE(sim::derive_seed({1, 2}), sim::derive_seed({2, 1}));
}

TEST(Runner, AlgorithmNames) {
    for (auto a : {sim::Algorithm::ConsensusMdGlmb, sim::Algorithm::ConsensusLmb, sim::Algorithm::CentralizedMdGlmb}) {
        EXPECT_EQ(sim::algorithm_from_string(sim::to_string(a)), a);
    }
    EXPECT_THROW((void)sim::algorithm_from_string("gm-phd"), ValidationError);
}

TEST(Runner, ConsensusImprovesOnLocalFiltering) {
    const auto s = sim::parse_scenario(kTwoNodeScenario);
    sim::RunOptions opts;
    opts.consensus_steps = 0;
    const auto local = sim::run_experiment(s, opts, 2, 3);
    opts.consensus_steps = 1;
    const auto fused = sim::run_experiment(s, opts, 2, 3);
    // A lone range or bearing sensor cannot localize the object; the pair can.
    const double ospa_local = sim::mean_ospa(local.network, 8, 15);
    const double ospa_fused = sim::mean_ospa(fused.network, 8, 15);
    EXPECT_LT(ospa_fused, 100.0);
    EXPECT_LT(ospa_fused, 0.5 * ospa_local);
    EXPECT_LT(sim::mean_cardinality_error(fused.network, 8, 15), 0.1);
    EXPECT_EQ(local.exchange.broadcasts, 0U);
    EXPECT_EQ(fused.exchange.broadcasts, 2U * 15 * 2);
}

TEST(Runner, SingleTrialAggregateEqualsTrial) {
    const auto s = sim::parse_scenario(kTwoNodeScenario);
    sim::RunOptions opts;
    opts.algorithm = sim::Algorithm::ConsensusLmb;
    const auto trial = sim::run_trial(s, opts, 77);
    const auto agg = sim::aggregate({trial}, opts.algorithm, 1);
    ASSERT_EQ(agg.per_node.size(), 2U);
    for (std::size_t node = 0; node < 2; ++node) {
        for (std::size_t k = 0; k < 15; ++k) {
            const auto& st = agg.per_node[node][k];
            EXPECT_EQ(st.ospa, trial.nodes[node][k].ospa.total);
            EXPECT_EQ(st.est_card_mean, static_cast<double>(trial.nodes[node][k].estimates.size()));
            EXPECT_EQ(st.est_card_std, 0.0);
            EXPECT_EQ(st.truth_card, static_cast<double>(trial.truth_cardinality[k]));
        }
    }
    // LMB broadcasts are counted as 4(1 + 14|L|) bytes each.
    EXPECT_EQ(trial.exchange.nominal_bytes % 4, 0U);
    EXPECT_GE(trial.exchange.nominal_bytes, 4U * trial.exchange.broadcasts);
}

TEST(Runner, DeterministicAcrossExecutionModes) {
    const auto s = sim::parse_scenario(kTwoNodeScenario);
    sim::RunOptions opts;
    opts.execution = Execution::Serial;
    const auto a = sim::canonical_text(sim::run_trial(s, opts, 5));
    opts.execution = Execution::Parallel;
    const auto b = sim::canonical_text(sim::run_trial(s, opts, 5));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sim::canonical_text(sim::run_trial(s, opts, 6)));
}

TEST(Runner, CsvOutput) {
    const auto s = sim::parse_scenario(kTwoNodeScenario);
    sim::RunOptions opts;
    opts.algorithm = sim::Algorithm::CentralizedMdGlmb;
    const auto r = sim::run_experiment(s, opts, 1, 1);
    const auto dir = std::filesystem::temp_directory_path() / "lrfs_csv_test";
    std::filesystem::remove_all(dir);
    sim::write_csv(r, dir.string());
    std::ifstream net(dir / "centralized-mdglmb_network.csv");
    std::string header;
    std::getline(net, header);
    EXPECT_EQ(header, "step,truth_card,est_card_mean,est_card_std,ospa,ospa_loc,ospa_card");
    int rows = 0;
    for (std::string line; std::getline(net, line);) ++rows;
    EXPECT_EQ(rows, 15);
    EXPECT_TRUE(std::filesystem::exists(dir / "centralized-mdglmb_trials.csv"));
    std::filesystem::remove_all(dir);
}
