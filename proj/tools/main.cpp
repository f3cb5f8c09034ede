#include "lrfs/errors.hpp"
#include "lrfs/sim/oracles.hpp"
#include "lrfs/sim/runner.hpp"
#include "lrfs/sim/scenario.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

/// LRFS_WORKERS overrides the OpenMP worker count.
void apply_worker_override() {
    const char* env = std::getenv("LRFS_WORKERS");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        throw lrfs::ValidationError(std::string("LRFS_WORKERS must be a positive integer, got '") + env + "'");
    }
    omp_set_num_threads(static_cast<int>(n));
}

int cmd_validate(const std::string& path) {
    const lrfs::sim::Scenario s = lrfs::sim::load_scenario(path);
    std::size_t toa = 0;
    std::size_t doa = 0;
    for (const auto& sensor : s.sensors) (sensor.kind == lrfs::sensors::SensorKind::Toa ? toa : doa) += 1;
    std::cout << "scenario " << s.name << ": ok\n"
              << "  steps " << s.steps << " x " << s.sampling_interval << " s\n"
              << "  sensors " << s.sensors.size() << " (" << toa << " toa, " << doa << " doa)\n"
              << "  birth components " << s.birth.entries.size() << "\n"
              << "  trajectories " << s.trajectories.size() << "\n"
              << "  graph diameter " << s.graph.diameter() << "\n"
              << "  consensus steps " << s.consensus_steps << ", trials " << s.trials << ", seed " << s.seed << "\n";
    return 0;
}

struct RunArgs {
    std::string scenario;
    std::string algorithm = "consensus-mdglmb";
    std::optional<int> trials;
    std::optional<int> consensus_steps;
    std::optional<std::uint64_t> seed;
    std::string out = "results";
    bool measure_bytes = false;
    bool serial = false;
};

int cmd_run(const RunArgs& a) {
    using namespace lrfs::sim;
    const Scenario s = load_scenario(a.scenario);
    RunOptions options;
    options.algorithm = algorithm_from_string(a.algorithm);
    options.consensus_steps = a.consensus_steps;
    options.measure_serialized_bytes = a.measure_bytes;
    options.execution = a.serial ? lrfs::Execution::Serial : lrfs::Execution::Parallel;
    const int trials = a.trials.value_or(s.trials);
    if (trials < 1) throw lrfs::ValidationError("--trials must be >= 1");

    const ExperimentResult r = run_experiment(s, options, static_cast<std::size_t>(trials), a.seed.value_or(s.seed));
    write_csv(r, a.out);

    const int first = std::max(1, s.steps / 3);
    std::cout << to_string(r.algorithm) << " on " << s.name << ": " << r.trials << " trials, N = " << r.consensus_steps
              << ", " << r.wall_seconds << " s\n"
              << "  mean OSPA (steps " << first << "-" << s.steps << ") " << mean_ospa(r.network, first, s.steps)
              << " m, mean cardinality error " << mean_cardinality_error(r.network, first, s.steps) << "\n"
              << "  exchanged " << r.exchange.broadcasts << " densities, " << r.exchange.nominal_bytes
              << " nominal bytes";
    if (a.measure_bytes) std::cout << ", " << r.exchange.serialized_bytes << " serialized bytes";
    std::cout << "\n  results written to " << a.out << "\n";
    return 0;
}

int cmd_oracle(const std::string& name) {
    const lrfs::sim::OracleReport r = lrfs::sim::run_oracle(name);
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, max error " << r.max_error
              << " (tolerance " << r.tolerance << ")\n";
    return r.passed ? 0 : static_cast<int>(lrfs::ErrorCategory::Runtime);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed labeled multi-object tracking toolkit"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run a Monte-Carlo experiment and write per-step CSV files");
    run->add_option("--scenario", run_args.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--algorithm", run_args.algorithm, "consensus-mdglmb | consensus-lmb | centralized-mdglmb");
    run->add_option("--trials", run_args.trials, "Number of trials (default: scenario)");
    run->add_option("--consensus-steps", run_args.consensus_steps, "Consensus rounds per step (default: scenario)");
    run->add_option("--seed", run_args.seed, "Master seed (default: scenario)");
    run->add_option("--out", run_args.out, "Output directory");
    run->add_flag("--measure-bytes", run_args.measure_bytes, "Also record the encoded size of exchanged densities");
    run->add_flag("--serial", run_args.serial, "Use the serial reference execution");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Load and check a scenario file");
    validate->add_option("--scenario", validate_path, "Scenario file")->required();

    std::string oracle_name;
    auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle comparison");
    oracle->add_option("name", oracle_name, "ospa | assignment | subsets")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_worker_override();
        if (*run) return cmd_run(run_args);
        if (*validate) return cmd_validate(validate_path);
        if (*oracle) return cmd_oracle(oracle_name);
    } catch (const lrfs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
