#include "lrfs/rfs/serialization.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>

namespace lrfs::rfs {

using nlohmann::json;

namespace {

json label_json(const Label& l) { return json::array({l.birth_time, l.index}); }

Label label_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw ValidationError("label must be a [birth_time, index] pair, got " + j.dump());
    }
    return Label{j[0].get<int>(), j[1].get<int>()};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

void expect_kind(const json& j, const char* kind) {
    if (field(j, "kind") != kind) throw ValidationError(std::string("expected kind '") + kind + "'");
}

}  // namespace

json to_json(const gm::GaussianMixture& m) {
    json lw = json::array();
    json means = json::array();
    json covs = json::array();
    for (const auto& c : m.components()) {
        lw.push_back(c.log_weight);
        const auto& g = c.gaussian;
        means.push_back(std::vector<double>(g.mean.data(), g.mean.data() + g.mean.size()));
        std::vector<double> rows;
        rows.reserve(static_cast<std::size_t>(g.covariance.size()));
        for (Eigen::Index r = 0; r < g.covariance.rows(); ++r) {
            for (Eigen::Index col = 0; col < g.covariance.cols(); ++col) rows.push_back(g.covariance(r, col));
        }
        covs.push_back(std::move(rows));
    }
    return json{{"log_weights", lw}, {"means", means}, {"covariances", covs}};
}

json to_json(const LmbDensity& d) {
    json entries = json::array();
    for (const auto& [l, b] : d.entries()) {
        entries.push_back({{"label", label_json(l)}, {"existence", b.existence}, {"pdf", to_json(*b.pdf)}});
    }
    return json{{"kind", "lmb"}, {"entries", entries}};
}

json to_json(const MdGlmbDensity& d) {
    json hyps = json::array();
    for (const auto& [labels, h] : d.hypotheses()) {
        json ls = json::array();
        for (const Label& l : labels) ls.push_back(label_json(l));
        json pdfs = json::array();
        for (const auto& p : h.pdfs) pdfs.push_back(to_json(*p));
        hyps.push_back({{"labels", ls}, {"log_weight", h.log_weight}, {"pdfs", pdfs}});
    }
    return json{{"kind", "mdglmb"}, {"hypotheses", hyps}};
}

gm::GaussianMixture mixture_from_json(const json& j) {
    const auto lw = field(j, "log_weights").get<std::vector<double>>();
    const auto means = field(j, "means").get<std::vector<std::vector<double>>>();
    const auto covs = field(j, "covariances").get<std::vector<std::vector<double>>>();
    if (lw.size() != means.size() || lw.size() != covs.size()) {
        throw ValidationError("mixture arrays have different lengths");
    }
    std::vector<gm::Component> comps;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        const auto d = static_cast<Eigen::Index>(means[i].size());
        if (static_cast<Eigen::Index>(covs[i].size()) != d * d) {
            throw ValidationError("covariance " + std::to_string(i) + " is not " + std::to_string(d) + "x"
                                  + std::to_string(d));
        }
        gm::Vector mean = Eigen::Map<const gm::Vector>(means[i].data(), d);
        gm::Matrix cov(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) cov(r, c) = covs[i][static_cast<std::size_t>(r * d + c)];
        }
        comps.push_back({lw[i], gm::Gaussian(std::move(mean), std::move(cov))});
    }
    return gm::GaussianMixture(std::move(comps));
}

LmbDensity lmb_from_json(const json& j) {
    expect_kind(j, "lmb");
    LmbDensity d;
    for (const auto& e : field(j, "entries")) {
        const Label l = label_from(field(e, "label"));
        if (d.contains(l)) throw DuplicateLabelError("label " + to_string(l) + " appears more than once");
        d.set(l, field(e, "existence").get<double>(), gm::make_pdf(mixture_from_json(field(e, "pdf"))));
    }
    return d;
}

MdGlmbDensity mdglmb_from_json(const json& j) {
    expect_kind(j, "mdglmb");
    MdGlmbDensity d;
    for (const auto& h : field(j, "hypotheses")) {
        std::vector<Label> labels;
        for (const auto& l : field(h, "labels")) labels.push_back(label_from(l));
        const auto& pdf_json = field(h, "pdfs");
        if (pdf_json.size() != labels.size()) throw ValidationError("hypothesis needs one pdf per label");
        // pdfs are listed in the same order as labels; realign to sorted order
        std::vector<std::pair<Label, gm::PdfPtr>> paired;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            paired.emplace_back(labels[i], gm::make_pdf(mixture_from_json(pdf_json[i])));
        }
        std::sort(paired.begin(), paired.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<gm::PdfPtr> pdfs;
        for (auto& [_, p] : paired) pdfs.push_back(std::move(p));
        d.add(LabelSet(std::move(labels)), field(h, "log_weight").get<double>(), std::move(pdfs));
    }
    return d;
}

std::size_t nominal_exchange_bytes(const MdGlmbDensity& d) {
    std::size_t floats = 0;
    for (const auto& [labels, _] : d.hypotheses()) floats += 1 + 14 * labels.size();
    return 4 * floats;
}

std::size_t nominal_exchange_bytes(const LmbDensity& d) { return 4 * (1 + 14 * d.size()); }

std::size_t serialized_bytes(const MdGlmbDensity& d) { return to_json(d).dump().size(); }
std::size_t serialized_bytes(const LmbDensity& d) { return to_json(d).dump().size(); }

}  // namespace lrfs::rfs
