#pragma once

#include "lrfs/execution.hpp"
#include "lrfs/filters/estimates.hpp"
#include "lrfs/fusion/consensus.hpp"
#include "lrfs/sim/ospa.hpp"
#include "lrfs/sim/scenario.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace lrfs::sim {

enum class Algorithm {
    ConsensusMdGlmb,
    ConsensusLmb,
    CentralizedMdGlmb,
};

[[nodiscard]] std::string to_string(Algorithm a);
/// "consensus-mdglmb", "consensus-lmb" or "centralized-mdglmb".
[[nodiscard]] Algorithm algorithm_from_string(const std::string& s);

struct RunOptions {
    Algorithm algorithm = Algorithm::ConsensusMdGlmb;
    /// Consensus rounds per time step; unset means the scenario's value.
    std::optional<int> consensus_steps;
    /// Parallelism over trials (run_experiment) or, within a trial, over nodes.
    Execution execution = Execution::Parallel;
    /// Also record the JSON size of every exchanged density.
    bool measure_serialized_bytes = false;
};

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);
/// Hash of a sequence of counters, used to derive independent rng streams.
[[nodiscard]] std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Seed of trial `index` of an experiment with master seed `master`.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t master, std::size_t index);

/// Scans of every sensor at `step`, drawn from a stream keyed by
/// (trial seed, step, sensor) so that results do not depend on scheduling.
[[nodiscard]] std::vector<std::vector<double>> simulate_scans(const Scenario& s, const std::vector<sensors::TruthPoint>& truth,
                                                              std::uint64_t trial_seed, int step);

struct NodeStep {
    std::vector<filters::Estimate> estimates;
    OspaResult ospa;
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::vector<std::size_t> truth_cardinality;  // per step
    /// [node][step]; the centralized filter reports a single node.
    std::vector<std::vector<NodeStep>> nodes;
    fusion::ExchangeStats exchange;
    double wall_seconds = 0.0;
};

/// Runs one Monte-Carlo trial. Per step and node: local prediction, local
/// update with the node's own scan, N consensus rounds with Metropolis weights
/// (each followed by per-track mixture reduction), estimate extraction and
/// OSPA against the truth. The centralized filter instead updates a single
/// density with every scan in sensor order.
///
/// Filter failures are rethrown with step and node context, keeping their
/// error category.
[[nodiscard]] TrialResult run_trial(const Scenario& s, const RunOptions& options, std::uint64_t seed);

/// Canonical text of everything a trial computes except its wall time;
/// equal seeds must give byte-identical text.
[[nodiscard]] std::string canonical_text(const TrialResult& r);

struct StepStats {
    double truth_card = 0.0;
    double est_card_mean = 0.0;
    double est_card_std = 0.0;
    double ospa = 0.0;
    double ospa_loc = 0.0;
    double ospa_card = 0.0;
};

struct ExperimentResult {
    Algorithm algorithm = Algorithm::ConsensusMdGlmb;
    int consensus_steps = 0;
    std::size_t trials = 0;
    std::vector<std::vector<StepStats>> per_node;  // [node][step]
    /// Statistics over all (trial, node) pairs.
    std::vector<StepStats> network;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> trial_seconds;
    std::vector<fusion::ExchangeStats> trial_exchange;
    fusion::ExchangeStats exchange;  // summed over trials
    double wall_seconds = 0.0;
};

/// Runs `trials` independent trials seeded from `master_seed` (concurrently
/// under Execution::Parallel) and aggregates them in trial order, so results
/// do not depend on the worker count.
[[nodiscard]] ExperimentResult run_experiment(const Scenario& s, const RunOptions& options, std::size_t trials,
                                              std::uint64_t master_seed);

/// Aggregates already-computed trials (in the given order).
[[nodiscard]] ExperimentResult aggregate(const std::vector<TrialResult>& trials, Algorithm algorithm,
                                         int consensus_steps);

/// Mean over steps [first, last] (1-based, inclusive) of |est_card_mean − truth_card|.
[[nodiscard]] double mean_cardinality_error(const std::vector<StepStats>& stats, int first, int last);
/// Mean OSPA over steps [first, last] (1-based, inclusive).
[[nodiscard]] double mean_ospa(const std::vector<StepStats>& stats, int first, int last);

/// Writes <prefix>_node<i>.csv, <prefix>_network.csv and <prefix>_trials.csv
/// into `dir` (created if missing), with <prefix> the algorithm name.
void write_csv(const ExperimentResult& r, const std::string& dir);

}  // namespace lrfs::sim
