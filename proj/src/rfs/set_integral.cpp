#include "lrfs/rfs/set_integral.hpp"

#include "lrfs/errors.hpp"

#include <cmath>

namespace lrfs::rfs {

std::vector<double> Grid1D::nodes() const {
    if (points < 2 || !(hi > lo)) throw ValidationError("grid needs hi > lo and at least two points");
    std::vector<double> out(points);
    const double h = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = lo + h * static_cast<double>(i);
    return out;
}

std::vector<double> Grid1D::weights() const {
    std::vector<double> w(points, (hi - lo) / static_cast<double>(points - 1));
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

namespace {

double integrate_from(const DensityEvaluator& f, std::vector<LabeledScalar>& pts, std::size_t dim,
                      const std::vector<double>& x, const std::vector<double>& w) {
    if (dim == pts.size()) return f(pts);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        pts[dim].x = x[i];
        sum += w[i] * integrate_from(f, pts, dim + 1, x, w);
    }
    return sum;
}

double pdf_1d(const gm::GaussianMixture& p, double x) {
    gm::Vector v(1);
    v(0) = x;
    return p.pdf(v);
}

}  // namespace

double labeled_integral(const DensityEvaluator& f, const LabelSet& labels, const Grid1D& grid) {
    std::vector<LabeledScalar> pts;
    for (const Label& l : labels) pts.push_back({0.0, l});
    const auto x = grid.nodes();
    const auto w = grid.weights();
    return integrate_from(f, pts, 0, x, w);
}

double set_integral_oracle(const DensityEvaluator& f, const LabelSet& label_space, const Grid1D& grid) {
    const std::size_t n = label_space.size();
    if (n > 16) throw ValidationError("set integral oracle limited to small label spaces");
    double total = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Label> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) subset.push_back(label_space[i]);
        }
        total += labeled_integral(f, LabelSet(std::move(subset)), grid);
    }
    return total;
}

DensityEvaluator evaluator(const MdGlmbDensity& d) {
    return [d](std::span<const LabeledScalar> pts) {
        std::vector<Label> labels;
        for (const auto& p : pts) labels.push_back(p.label);
        const auto it = d.hypotheses().find(LabelSet(labels));
        if (it == d.hypotheses().end()) return 0.0;
        double value = std::exp(it->second.log_weight);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto idx = it->first.index_of(pts[i].label);
            value *= pdf_1d(*it->second.pdfs[*idx], pts[i].x);
        }
        return value;
    };
}

DensityEvaluator evaluator(const LmbDensity& d) {
    return [d](std::span<const LabeledScalar> pts) {
        for (const auto& p : pts) {
            if (!d.contains(p.label)) return 0.0;
        }
        double value = 1.0;
        for (const auto& [l, b] : d.entries()) {
            const LabeledScalar* hit = nullptr;
            for (const auto& p : pts) {
                if (p.label == l) hit = &p;
            }
            value *= hit ? b.existence * pdf_1d(*b.pdf, hit->x) : 1.0 - b.existence;
        }
        return value;
    };
}

}  // namespace lrfs::rfs
