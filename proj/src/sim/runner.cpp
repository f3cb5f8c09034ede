#include "lrfs/sim/runner.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/filters/lmb_filter.hpp"
#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/sim/truth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace lrfs::sim {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::ConsensusMdGlmb: return "consensus-mdglmb";
    case Algorithm::ConsensusLmb: return "consensus-lmb";
    case Algorithm::CentralizedMdGlmb: return "centralized-mdglmb";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
    for (Algorithm a : {Algorithm::ConsensusMdGlmb, Algorithm::ConsensusLmb, Algorithm::CentralizedMdGlmb}) {
        if (s == to_string(a)) return a;
    }
    throw ValidationError("unknown algorithm '" + s +
                          "' (expected consensus-mdglmb, consensus-lmb or centralized-mdglmb)");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t index) { return derive_seed({master, index}); }

std::vector<std::vector<double>> simulate_scans(const Scenario& s, const std::vector<sensors::TruthPoint>& truth,
                                                std::uint64_t seed, int step) {
    std::vector<std::vector<double>> scans;
    scans.reserve(s.sensors.size());
    for (std::size_t j = 0; j < s.sensors.size(); ++j) {
        std::mt19937_64 rng(derive_seed({seed, static_cast<std::uint64_t>(step), j}));
        scans.push_back(sensors::simulate_measurements(truth, s.sensors[j], rng));
    }
    return scans;
}

namespace {

/// Re-throws a filter failure with step/node context and the same category.
template <typename Fn>
auto with_context(int step, std::size_t node, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.category(), "step " + std::to_string(step) + ", node " + std::to_string(node) + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(ErrorCategory::Runtime,
                    "step " + std::to_string(step) + ", node " + std::to_string(node) + ": " + e.what());
    }
}

NodeStep score(std::vector<filters::Estimate> estimates, const TruthSet& truth, const OspaParams& p) {
    std::vector<gm::Vector> est;
    std::vector<gm::Vector> tru;
    for (const auto& e : estimates) est.push_back(e.state);
    for (const auto& t : truth) tru.push_back(t.state);
    NodeStep out;
    out.ospa = ospa(positions(est), positions(tru), p.cutoff, p.order);
    out.estimates = std::move(estimates);
    return out;
}

template <typename Density, typename Predict, typename Update>
void run_consensus(const Scenario& s, const RunOptions& options, int rounds, const std::vector<TruthSet>& truth,
                   TrialResult& r, Density initial, Predict&& predict, Update&& update) {
    const std::size_t n = s.sensors.size();
    const fusion::ConsensusMatrix omega = fusion::metropolis_weights(s.graph);

    filters::FilterConfig cfg = s.filter;
    // Nodes are spread over threads; each node's kernels then run serially.
    cfg.execution = options.execution == Execution::Parallel && n > 1 ? Execution::Serial : options.execution;

    fusion::ConsensusOptions copts;
    copts.reduction = s.filter.reduction;
    copts.fusion.execution = options.execution;
    copts.fusion.clamp_normalizer = s.clamp_fusion_normalizer;
    copts.measure_serialized_bytes = options.measure_serialized_bytes;

    std::vector<Density> post(n, initial);
    r.nodes.assign(n, {});
    for (int k = 1; k <= s.steps; ++k) {
        const TruthSet& tk = truth[static_cast<std::size_t>(k - 1)];
        const auto scans = simulate_scans(s, tk, r.seed, k);
        parallel_for(n, options.execution, [&](std::size_t i) {
            post[i] = with_context(k, i, [&] {
                const Density predicted = predict(post[i], k, cfg);
                return update(predicted, scans[i], s.sensors[i], cfg);
            });
        });
        post = with_context(k, n, [&] { return fusion::consensus_run(std::move(post), s.graph, omega, rounds, copts,
                                                                      &r.exchange); });
        for (std::size_t i = 0; i < n; ++i) {
            r.nodes[i].push_back(score(filters::extract_estimates(post[i]), tk, s.ospa));
        }
    }
}

void append(std::ostringstream& os, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    os << buf;
}

}  // namespace

TrialResult run_trial(const Scenario& s, const RunOptions& options, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const int rounds = options.consensus_steps.value_or(s.consensus_steps);
    if (rounds < 0) throw ValidationError("consensus steps must be >= 0");

    const auto truth = generate_truth(s);
    TrialResult r;
    r.seed = seed;
    for (const auto& t : truth) r.truth_cardinality.push_back(t.size());

    switch (options.algorithm) {
    case Algorithm::ConsensusMdGlmb:
        run_consensus(
            s, options, rounds, truth, r, rfs::MdGlmbDensity::no_objects(),
            [&](const rfs::MdGlmbDensity& d, int k, const filters::FilterConfig& cfg) {
                return filters::mdglmb_predict(d, s.motion, s.birth, k, cfg);
            },
            [](const rfs::MdGlmbDensity& d, const std::vector<double>& z, const sensors::SensorModel& sensor,
               const filters::FilterConfig& cfg) { return filters::mdglmb_update(d, z, sensor, cfg); });
        break;
    case Algorithm::ConsensusLmb:
        run_consensus(
            s, options, rounds, truth, r, rfs::LmbDensity{},
            [&](const rfs::LmbDensity& d, int k, const filters::FilterConfig& cfg) {
                return filters::lmb_predict(d, s.motion, s.birth, k, cfg);
            },
            [](const rfs::LmbDensity& d, const std::vector<double>& z, const sensors::SensorModel& sensor,
               const filters::FilterConfig& cfg) { return filters::lmb_update(d, z, sensor, cfg); });
        break;
    case Algorithm::CentralizedMdGlmb: {
        filters::FilterConfig cfg = s.filter;
        cfg.execution = options.execution;
        rfs::MdGlmbDensity post = rfs::MdGlmbDensity::no_objects();
        r.nodes.assign(1, {});
        for (int k = 1; k <= s.steps; ++k) {
            const TruthSet& tk = truth[static_cast<std::size_t>(k - 1)];
            const auto scans = simulate_scans(s, tk, seed, k);
            post = with_context(k, 0, [&] {
                return filters::centralized_mdglmb_step(post, s.motion, s.birth, k, s.sensors, scans, cfg);
            });
            r.nodes[0].push_back(score(filters::extract_estimates(post), tk, s.ospa));
        }
        break;
    }
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string canonical_text(const TrialResult& r) {
    std::ostringstream os;
    os << "seed " << r.seed << "\n";
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        for (std::size_t k = 0; k < r.nodes[i].size(); ++k) {
            const NodeStep& st = r.nodes[i][k];
            os << "node " << i << " step " << k + 1 << " truth " << r.truth_cardinality[k] << " ospa ";
            append(os, st.ospa.total);
            os << ' ';
            append(os, st.ospa.localization);
            os << ' ';
            append(os, st.ospa.cardinality);
            for (const auto& e : st.estimates) {
                os << " | " << rfs::to_string(e.label);
                for (Eigen::Index d = 0; d < e.state.size(); ++d) {
                    os << ' ';
                    append(os, e.state(d));
                }
            }
            os << "\n";
        }
    }
    os << "exchange " << r.exchange.broadcasts << ' ' << r.exchange.nominal_bytes << ' '
       << r.exchange.serialized_bytes << ' ' << r.exchange.empty_intersections << "\n";
    return os.str();
}

namespace {

/// Mean and population standard deviation, summed in the given order.
struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    [[nodiscard]] double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
    [[nodiscard]] double stddev() const {
        if (count == 0) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - m * m));
    }
};

struct StepAccumulator {
    Moments card;
    Moments ospa;
    Moments loc;
    Moments crd;

    void add(const NodeStep& st) {
        card.add(static_cast<double>(st.estimates.size()));
        ospa.add(st.ospa.total);
        loc.add(st.ospa.localization);
        crd.add(st.ospa.cardinality);
    }
    [[nodiscard]] StepStats stats(double truth) const {
        return {truth, card.mean(), card.stddev(), ospa.mean(), loc.mean(), crd.mean()};
    }
};

}  // namespace

ExperimentResult aggregate(const std::vector<TrialResult>& trials, Algorithm algorithm, int consensus_steps) {
    ExperimentResult out;
    out.algorithm = algorithm;
    out.consensus_steps = consensus_steps;
    out.trials = trials.size();
    if (trials.empty()) return out;

    const std::size_t nodes = trials.front().nodes.size();
    const std::size_t steps = trials.front().truth_cardinality.size();
    std::vector<std::vector<StepAccumulator>> per_node(nodes, std::vector<StepAccumulator>(steps));
    std::vector<StepAccumulator> network(steps);
    for (const auto& t : trials) {
        if (t.nodes.size() != nodes || t.truth_cardinality.size() != steps) {
            throw Error(ErrorCategory::Runtime, "trials disagree in shape");
        }
        for (std::size_t i = 0; i < nodes; ++i) {
            for (std::size_t k = 0; k < steps; ++k) {
                per_node[i][k].add(t.nodes[i][k]);
                network[k].add(t.nodes[i][k]);
            }
        }
        out.trial_seeds.push_back(t.seed);
        out.trial_seconds.push_back(t.wall_seconds);
        out.trial_exchange.push_back(t.exchange);
        out.exchange += t.exchange;
    }
    const auto& truth = trials.front().truth_cardinality;
    out.per_node.assign(nodes, {});
    for (std::size_t i = 0; i < nodes; ++i) {
        for (std::size_t k = 0; k < steps; ++k) out.per_node[i].push_back(per_node[i][k].stats(static_cast<double>(truth[k])));
    }
    for (std::size_t k = 0; k < steps; ++k) out.network.push_back(network[k].stats(static_cast<double>(truth[k])));
    return out;
}

ExperimentResult run_experiment(const Scenario& s, const RunOptions& options, std::size_t trials,
                                std::uint64_t master_seed) {
    if (trials < 1) throw ValidationError("at least one trial required");
    const auto start = std::chrono::steady_clock::now();
    // Trials are spread over threads; everything within a trial runs serially.
    RunOptions inner = options;
    if (options.execution == Execution::Parallel && trials > 1) inner.execution = Execution::Serial;

    std::vector<TrialResult> results(trials);
    parallel_for(trials, options.execution,
                 [&](std::size_t t) { results[t] = run_trial(s, inner, trial_seed(master_seed, t)); });

    ExperimentResult out =
        aggregate(results, options.algorithm, options.consensus_steps.value_or(s.consensus_steps));
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

void check_range(const std::vector<StepStats>& stats, int first, int last) {
    if (first < 1 || last < first || static_cast<std::size_t>(last) > stats.size()) {
        throw ValidationError("step range outside the run");
    }
}

}  // namespace

double mean_cardinality_error(const std::vector<StepStats>& stats, int first, int last) {
    check_range(stats, first, last);
    double sum = 0.0;
    for (int k = first; k <= last; ++k) {
        const StepStats& st = stats[static_cast<std::size_t>(k - 1)];
        sum += std::abs(st.est_card_mean - st.truth_card);
    }
    return sum / (last - first + 1);
}

double mean_ospa(const std::vector<StepStats>& stats, int first, int last) {
    check_range(stats, first, last);
    double sum = 0.0;
    for (int k = first; k <= last; ++k) sum += stats[static_cast<std::size_t>(k - 1)].ospa;
    return sum / (last - first + 1);
}

namespace {

void write_steps(const std::filesystem::path& path, const std::vector<StepStats>& stats) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCategory::Runtime, "cannot write " + path.string());
    out.precision(10);
    out << "step,truth_card,est_card_mean,est_card_std,ospa,ospa_loc,ospa_card\n";
    for (std::size_t k = 0; k < stats.size(); ++k) {
        const StepStats& s = stats[k];
        out << k + 1 << ',' << s.truth_card << ',' << s.est_card_mean << ',' << s.est_card_std << ',' << s.ospa << ','
            << s.ospa_loc << ',' << s.ospa_card << '\n';
    }
}

}  // namespace

void write_csv(const ExperimentResult& r, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) throw Error(ErrorCategory::Runtime, "cannot create " + dir + ": " + ec.message());

    const std::string prefix = to_string(r.algorithm);
    for (std::size_t i = 0; i < r.per_node.size(); ++i) {
        write_steps(base / (prefix + "_node" + std::to_string(i) + ".csv"), r.per_node[i]);
    }
    write_steps(base / (prefix + "_network.csv"), r.network);

    std::ofstream out(base / (prefix + "_trials.csv"));
    if (!out) throw Error(ErrorCategory::Runtime, "cannot write trial summary in " + dir);
    out.precision(10);
    out << "trial,seed,wall_seconds,broadcasts,nominal_bytes,serialized_bytes,empty_intersections\n";
    for (std::size_t t = 0; t < r.trial_seeds.size(); ++t) {
        const auto& e = r.trial_exchange[t];
        out << t << ',' << r.trial_seeds[t] << ',' << r.trial_seconds[t] << ',' << e.broadcasts << ','
            << e.nominal_bytes << ',' << e.serialized_bytes << ',' << e.empty_intersections << '\n';
    }
}

}  // namespace lrfs::sim
