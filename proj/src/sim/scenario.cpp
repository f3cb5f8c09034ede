#include "lrfs/sim/scenario.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/sim/truth.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace lrfs::sim {

double Area::diagonal() const { return std::hypot(x_max - x_min, y_max - y_min); }

namespace {

/// Field lookups that report the dotted field path and the source line.
class Doc {
public:
    explicit Doc(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& at, const std::string& field, const std::string& msg) const {
        std::ostringstream os;
        os << origin_;
        if (at.IsDefined() && at.Mark().line >= 0) os << ":" << at.Mark().line + 1;
        os << ": field '" << field << "': " << msg;
        throw ValidationError(os.str());
    }

    YAML::Node child(const YAML::Node& parent, const std::string& parent_path, const std::string& key,
                     bool required) const {
        const std::string path = join(parent_path, key);
        if (!parent.IsMap()) fail(parent, parent_path.empty() ? "<root>" : parent_path, "expected a mapping");
        YAML::Node n = parent[key];
        if (required && !n.IsDefined()) fail(parent, path, "missing");
        return n;
    }

    template <typename T>
    T get(const YAML::Node& parent, const std::string& parent_path, const std::string& key) const {
        return as<T>(child(parent, parent_path, key, true), join(parent_path, key));
    }

    template <typename T>
    T get_or(const YAML::Node& parent, const std::string& parent_path, const std::string& key, T fallback) const {
        YAML::Node n = child(parent, parent_path, key, false);
        return n.IsDefined() ? as<T>(n, join(parent_path, key)) : fallback;
    }

    template <typename T>
    T as(const YAML::Node& n, const std::string& path) const {
        if (!n.IsScalar()) fail(n, path, "expected a scalar");
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            fail(n, path, "cannot convert '" + n.Scalar() + "'");
        }
    }

    std::vector<double> numbers(const YAML::Node& n, const std::string& path, std::size_t expected) const {
        if (!n.IsSequence() || n.size() != expected) {
            fail(n, path, "expected a list of " + std::to_string(expected) + " numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < n.size(); ++i) out.push_back(as<double>(n[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }
    static std::string item(const std::string& a, std::size_t i) { return a + "[" + std::to_string(i) + "]"; }

private:
    std::string origin_;
};

template <typename Fn>
void check(const Doc& doc, const YAML::Node& at, const std::string& field, Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        doc.fail(at, field, e.what());
    }
}

void parse_area(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node a = doc.child(root, "", "area", true);
    s.area = {doc.get<double>(a, "area", "x_min"), doc.get<double>(a, "area", "x_max"),
              doc.get<double>(a, "area", "y_min"), doc.get<double>(a, "area", "y_max")};
    if (!(s.area.x_max > s.area.x_min && s.area.y_max > s.area.y_min)) doc.fail(a, "area", "empty rectangle");
}

void parse_birth(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node b = doc.child(root, "", "birth", true);
    const double r_default = doc.get_or<double>(b, "birth", "existence", 0.0);
    std::vector<double> diag_default;
    if (b["covariance_diag"].IsDefined()) diag_default = doc.numbers(b["covariance_diag"], "birth.covariance_diag", 4);

    const YAML::Node comps = doc.child(b, "birth", "components", true);
    if (!comps.IsSequence()) doc.fail(comps, "birth.components", "expected a list");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string path = Doc::item("birth.components", i);
        const YAML::Node c = comps[i];
        filters::BirthEntry e;
        e.index = doc.get<int>(c, path, "index");
        e.existence = doc.get_or<double>(c, path, "existence", r_default);
        const auto mean = doc.numbers(doc.child(c, path, "mean", true), path + ".mean", 4);
        std::vector<double> diag = diag_default;
        if (c["covariance_diag"].IsDefined()) diag = doc.numbers(c["covariance_diag"], path + ".covariance_diag", 4);
        if (diag.empty()) doc.fail(c, path + ".covariance_diag", "missing (no default given under birth)");
        gm::Vector m = Eigen::Map<const gm::Vector>(mean.data(), 4);
        gm::Matrix P = Eigen::Map<const gm::Vector>(diag.data(), 4).asDiagonal();
        check(doc, c, path, [&] {
            e.pdf = gm::make_pdf(gm::GaussianMixture(std::vector<gm::Component>{{0.0, gm::Gaussian(m, P)}}));
        });
        s.birth.entries.push_back(std::move(e));
    }
    check(doc, b, "birth", [&] { s.birth.validate(); });
}

void parse_sensors(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node list = doc.child(root, "", "sensors", true);
    if (!list.IsSequence() || list.size() == 0) doc.fail(list, "sensors", "expected a non-empty list");
    const double r_max_default = s.area.diagonal();
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = Doc::item("sensors", i);
        const YAML::Node n = list[i];
        const auto kind_text = doc.get<std::string>(n, path, "kind");
        sensors::SensorKind kind{};
        check(doc, n["kind"], path + ".kind", [&] { kind = sensors::sensor_kind_from_string(kind_text); });
        const auto pos = doc.numbers(doc.child(n, path, "position", true), path + ".position", 2);
        const double lambda = doc.get<double>(n, path, "clutter_rate");
        const double pd = doc.get<double>(n, path, "detection_probability");

        double sigma = 0.0;
        if (n["noise_std_deg"].IsDefined()) {
            if (kind != sensors::SensorKind::Doa) doc.fail(n, path + ".noise_std_deg", "only valid for doa sensors");
            sigma = doc.get<double>(n, path, "noise_std_deg") * std::numbers::pi / 180.0;
        } else {
            sigma = doc.get<double>(n, path, "noise_std");
        }
        check(doc, n, path, [&] {
            if (kind == sensors::SensorKind::Toa) {
                const double r_max = doc.get_or<double>(n, path, "max_range", r_max_default);
                s.sensors.push_back(sensors::SensorModel::toa(pos[0], pos[1], sigma, lambda, pd, r_max));
            } else {
                s.sensors.push_back(sensors::SensorModel::doa(pos[0], pos[1], sigma, lambda, pd));
            }
            s.sensors.back().validate();
        });
    }
}

void parse_network(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node net = doc.child(root, "", "network", true);
    const int nodes = doc.get<int>(net, "network", "nodes");
    if (nodes < 1) doc.fail(net["nodes"], "network.nodes", "must be >= 1");
    if (static_cast<std::size_t>(nodes) != s.sensors.size()) {
        doc.fail(net["nodes"], "network.nodes", "must equal the number of sensors (node i hosts sensor i)");
    }
    std::vector<std::pair<int, int>> edges;
    const YAML::Node list = doc.child(net, "network", "edges", false);
    if (list.IsDefined()) {
        if (!list.IsSequence()) doc.fail(list, "network.edges", "expected a list of [i, j] pairs");
        for (std::size_t e = 0; e < list.size(); ++e) {
            const std::string path = Doc::item("network.edges", e);
            const auto ij = doc.numbers(list[e], path, 2);
            const int i = static_cast<int>(ij[0]);
            const int j = static_cast<int>(ij[1]);
            if (i != ij[0] || j != ij[1]) doc.fail(list[e], path, "node ids must be integers");
            edges.emplace_back(i, j);
            check(doc, list[e], path, [&] {
                if (i < 0 || j < 0 || i >= nodes || j >= nodes) {
                    throw ValidationError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") references an unknown node");
                }
            });
        }
    }
    check(doc, net, "network", [&] {
        s.graph = fusion::NetworkGraph::undirected(static_cast<std::size_t>(nodes), edges);
        if (!s.graph.is_strongly_connected()) throw ValidationError("graph is not connected");
    });
}

void parse_trajectories(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node list = doc.child(root, "", "trajectories", false);
    if (!list.IsDefined() || list.IsNull()) return;
    if (!list.IsSequence()) doc.fail(list, "trajectories", "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = Doc::item("trajectories", i);
        const YAML::Node n = list[i];
        Trajectory t;
        t.birth_step = doc.get<int>(n, path, "birth_step");
        t.death_step = doc.get<int>(n, path, "death_step");
        if (t.death_step <= t.birth_step) doc.fail(n["death_step"], path + ".death_step", "must exceed birth_step");
        if (t.birth_step < 1) doc.fail(n["birth_step"], path + ".birth_step", "must be >= 1");
        t.label = {t.birth_step, doc.get_or<int>(n, path, "index", static_cast<int>(i) + 1)};
        const auto x0 = doc.numbers(doc.child(n, path, "initial_state", true), path + ".initial_state", 4);
        t.initial_state = Eigen::Map<const gm::Vector>(x0.data(), 4);

        const YAML::Node segs = doc.child(n, path, "segments", false);
        if (segs.IsDefined()) {
            if (!segs.IsSequence()) doc.fail(segs, path + ".segments", "expected a list");
            for (std::size_t j = 0; j < segs.size(); ++j) {
                const std::string sp = Doc::item(path + ".segments", j);
                const auto v = doc.numbers(doc.child(segs[j], sp, "velocity", true), sp + ".velocity", 2);
                VelocityChange c{doc.get<int>(segs[j], sp, "step"), v[0], v[1]};
                if (!t.segments.empty() && c.step <= t.segments.back().step) {
                    doc.fail(segs[j], sp + ".step", "segment steps must increase");
                }
                t.segments.push_back(c);
            }
        }
        s.trajectories.push_back(std::move(t));
    }
    std::set<rfs::Label> seen;
    for (std::size_t i = 0; i < s.trajectories.size(); ++i) {
        if (!seen.insert(s.trajectories[i].label).second) {
            doc.fail(list[i], Doc::item("trajectories", i), "duplicate label " + rfs::to_string(s.trajectories[i].label));
        }
    }
}

void parse_filter(const Doc& doc, const YAML::Node& root, Scenario& s) {
    const YAML::Node f = doc.child(root, "", "filter", false);
    filters::FilterConfig& c = s.filter;
    if (f.IsDefined()) {
        const std::string p = "filter";
        c.max_hypotheses = doc.get_or<std::size_t>(f, p, "max_hypotheses", c.max_hypotheses);
        c.assignments_per_hypothesis =
            doc.get_or<std::size_t>(f, p, "assignments_per_hypothesis", c.assignments_per_hypothesis);
        c.proportional_assignments = doc.get_or<bool>(f, p, "proportional_assignments", c.proportional_assignments);
        c.hypothesis_prune = doc.get_or<double>(f, p, "hypothesis_prune", c.hypothesis_prune);
        c.existence_prune = doc.get_or<double>(f, p, "existence_prune", c.existence_prune);
        c.lmb_expansion_hypotheses =
            doc.get_or<std::size_t>(f, p, "lmb_expansion_hypotheses", c.lmb_expansion_hypotheses);
        c.reduction.merge_threshold = doc.get_or<double>(f, p, "merge_threshold", c.reduction.merge_threshold);
        c.reduction.truncation_threshold =
            doc.get_or<double>(f, p, "truncation_threshold", c.reduction.truncation_threshold);
        c.reduction.max_components = doc.get_or<std::size_t>(f, p, "max_components", c.reduction.max_components);
        c.gate = doc.get_or<double>(f, p, "gate", c.gate);
        c.clutter_floor = doc.get_or<double>(f, p, "clutter_floor", c.clutter_floor);
    }
    check(doc, f.IsDefined() ? f : root, "filter", [&] { c.validate(); });
}

Scenario parse(const YAML::Node& root, const Doc& doc) {
    if (!root.IsMap()) doc.fail(root, "<root>", "expected a mapping");
    Scenario s;
    const int version = doc.get<int>(root, "", "schema_version");
    if (version != kSchemaVersion) {
        doc.fail(root["schema_version"], "schema_version",
                 "unsupported version " + std::to_string(version) + " (expected " + std::to_string(kSchemaVersion) +
                     ")");
    }
    s.name = doc.get_or<std::string>(root, "", "name", "unnamed");
    parse_area(doc, root, s);
    s.sampling_interval = doc.get<double>(root, "", "sampling_interval");
    if (!(s.sampling_interval > 0.0)) doc.fail(root["sampling_interval"], "sampling_interval", "must be positive");
    s.steps = doc.get<int>(root, "", "steps");
    if (s.steps < 1) doc.fail(root["steps"], "steps", "must be >= 1");

    const YAML::Node m = doc.child(root, "", "motion", true);
    s.sigma_w = doc.get<double>(m, "motion", "sigma_w");
    const double ps = doc.get<double>(m, "motion", "survival_probability");
    check(doc, m, "motion", [&] {
        s.motion = filters::MotionModel::ncv(s.sampling_interval, s.sigma_w, ps);
        s.motion.validate();
    });

    parse_birth(doc, root, s);
    parse_sensors(doc, root, s);
    parse_network(doc, root, s);
    parse_trajectories(doc, root, s);
    parse_filter(doc, root, s);

    const YAML::Node c = doc.child(root, "", "consensus", false);
    if (c.IsDefined()) {
        s.consensus_steps = doc.get_or<int>(c, "consensus", "steps", s.consensus_steps);
        s.clamp_fusion_normalizer = doc.get_or<bool>(c, "consensus", "clamp_normalizer", s.clamp_fusion_normalizer);
    }
    if (s.consensus_steps < 0) doc.fail(c, "consensus.steps", "must be >= 0");

    const YAML::Node o = doc.child(root, "", "ospa", false);
    if (o.IsDefined()) {
        s.ospa.cutoff = doc.get_or<double>(o, "ospa", "cutoff", s.ospa.cutoff);
        s.ospa.order = doc.get_or<double>(o, "ospa", "order", s.ospa.order);
    }
    if (!(s.ospa.cutoff > 0.0 && s.ospa.order >= 1.0)) doc.fail(o, "ospa", "need cutoff > 0 and order >= 1");

    const YAML::Node mc = doc.child(root, "", "monte_carlo", false);
    if (mc.IsDefined()) {
        s.trials = doc.get_or<int>(mc, "monte_carlo", "trials", s.trials);
        s.seed = doc.get_or<std::uint64_t>(mc, "monte_carlo", "seed", s.seed);
    }
    if (s.trials < 1) doc.fail(mc, "monte_carlo.trials", "must be >= 1");

    // Trajectories must stay inside the surveillance area.
    for (std::size_t i = 0; i < s.trajectories.size(); ++i) {
        const Trajectory& t = s.trajectories[i];
        check(doc, root["trajectories"][i], Doc::item("trajectories", i), [&] {
            for (int k = t.birth_step; k < t.death_step && k <= s.steps; ++k) {
                const gm::Vector x = trajectory_state(t, k, s.sampling_interval);
                if (!s.area.contains(x(0), x(2))) {
                    throw ValidationError("leaves the surveillance area at step " + std::to_string(k));
                }
            }
        });
    }
    return s;
}

}  // namespace

void Scenario::validate() const {
    if (!(sampling_interval > 0.0)) throw ValidationError("sampling_interval must be positive");
    if (steps < 1) throw ValidationError("steps must be >= 1");
    if (!(area.x_max > area.x_min && area.y_max > area.y_min)) throw ValidationError("empty surveillance area");
    motion.validate();
    birth.validate();
    filter.validate();
    if (sensors.empty()) throw ValidationError("no sensors");
    for (const auto& s : sensors) s.validate();
    if (graph.size() != sensors.size()) throw ValidationError("network size differs from the sensor count");
    if (!graph.is_strongly_connected()) throw ValidationError("graph is not connected");
    if (consensus_steps < 0) throw ValidationError("consensus steps must be >= 0");
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (!(ospa.cutoff > 0.0 && ospa.order >= 1.0)) throw ValidationError("need OSPA cutoff > 0 and order >= 1");
    for (const auto& t : trajectories) {
        if (t.death_step <= t.birth_step) {
            throw ValidationError("trajectory " + rfs::to_string(t.label) + ": death must exceed birth");
        }
        if (t.initial_state.size() != sensors::kStateDim) {
            throw ValidationError("trajectory " + rfs::to_string(t.label) + ": initial state must have 4 entries");
        }
        for (int k = t.birth_step; k < t.death_step && k <= steps; ++k) {
            const gm::Vector x = trajectory_state(t, k, sampling_interval);
            if (!area.contains(x(0), x(2))) {
                throw ValidationError("trajectory " + rfs::to_string(t.label) + " leaves the area at step " +
                                      std::to_string(k));
            }
        }
    }
}

Scenario parse_scenario(const std::string& yaml_text, const std::string& origin) {
    const Doc doc(origin);
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::ParserException& e) {
        throw ValidationError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return parse(root, doc);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

}  // namespace lrfs::sim
