#include "lrfs/gm/chernoff.hpp"

#include "lrfs/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace lrfs::gm {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

void check_omega(double omega) {
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw ValidationError("fusion exponent must lie in [0, 1], got " + std::to_string(omega));
    }
}

double log_beta_from_logdet(double omega, double log_det_P, double d) {
    // ½ [d log 2π − d log ω + log det P] − (ω/2)[d log 2π + log det P]
    return 0.5 * (d * kLog2Pi - d * std::log(omega) + log_det_P)
         - 0.5 * omega * (d * kLog2Pi + log_det_P);
}

/// Per-component quantities reused across all pairs.
struct Prepared {
    double log_alpha;
    const Gaussian* g;
    Matrix info;
    Vector info_mean;
    double log_det;
};

std::vector<Prepared> prepare(const GaussianMixture& m) {
    std::vector<Prepared> out;
    out.reserve(m.size());
    for (const auto& c : m.components()) {
        const Cholesky chol = cholesky_or_throw(c.gaussian.covariance, "mixture component covariance");
        Prepared p{c.log_weight, &c.gaussian, chol.inverse(), Vector(), chol.log_det};
        p.info_mean = chol.solve(c.gaussian.mean);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

Gaussian gaussian_ci(const Gaussian& a, const Gaussian& b, double omega) {
    check_omega(omega);
    require_positive_definite(a.covariance, "first CI operand covariance");
    require_positive_definite(b.covariance, "second CI operand covariance");
    if (omega == 1.0) return a;
    if (omega == 0.0) return b;
    const InformationPair ia = to_information(a);
    const InformationPair ib = to_information(b);
    InformationPair fused{omega * ia.info_matrix + (1.0 - omega) * ib.info_matrix,
                          omega * ia.info_vector + (1.0 - omega) * ib.info_vector};
    Gaussian out = from_information(fused);
    require_positive_definite(out.covariance, "CI result covariance");
    return out;
}

double log_beta(double omega, const Matrix& P) {
    if (!(omega > 0.0)) throw DegenerateExponentError("log_beta needs a positive exponent");
    const Cholesky c = cholesky_or_throw(P, "beta covariance");
    return log_beta_from_logdet(omega, c.log_det, static_cast<double>(P.rows()));
}

double chernoff_weight(const Gaussian& a, const Gaussian& b, double log_alpha_a, double log_alpha_b,
                       double omega) {
    if (!(omega > 0.0 && omega < 1.0)) {
        throw DegenerateExponentError("chernoff_weight requires 0 < omega < 1");
    }
    const Matrix sep = a.covariance / omega + b.covariance / (1.0 - omega);
    return omega * log_alpha_a + (1.0 - omega) * log_alpha_b + log_beta(omega, a.covariance)
         + log_beta(1.0 - omega, b.covariance) + log_normal(a.mean - b.mean, sep);
}

ChernoffResult gm_chernoff_pair(const GaussianMixture& pa, const GaussianMixture& pb, double omega) {
    check_omega(omega);
    if (pa.empty() || pb.empty()) throw EmptyFusionError("GM fusion of an empty mixture");
    if (omega == 1.0) return {pa.normalized(), 0.0};
    if (omega == 0.0) return {pb.normalized(), 0.0};

    const auto prep_a = prepare(pa);
    const auto prep_b = prepare(pb);
    const double d = static_cast<double>(pa.dim());
    const double wb = 1.0 - omega;

    std::vector<Component> fused;
    fused.reserve(prep_a.size() * prep_b.size());
    for (const auto& a : prep_a) {
        const double beta_a = log_beta_from_logdet(omega, a.log_det, d);
        for (const auto& b : prep_b) {
            const Matrix info = omega * a.info + wb * b.info;
            const auto chol = try_cholesky(info);
            if (!chol) continue;
            const Matrix sep = a.g->covariance / omega + b.g->covariance / wb;
            const auto chol_sep = try_cholesky(sep);
            if (!chol_sep) continue;
            const Vector diff = a.g->mean - b.g->mean;
            const double log_sep = -0.5 * (d * kLog2Pi + chol_sep->log_det + chol_sep->quadratic_form(diff));
            const double log_alpha = omega * a.log_alpha + wb * b.log_alpha + beta_a
                                   + log_beta_from_logdet(wb, b.log_det, d) + log_sep;
            if (!std::isfinite(log_alpha)) continue;
            Matrix cov = symmetrize(chol->inverse());
            Vector mean = cov * (omega * a.info_mean + wb * b.info_mean);
            fused.push_back(Component{log_alpha, Gaussian::unchecked(std::move(mean), std::move(cov))});
        }
    }
    if (fused.empty()) throw EmptyFusionError("all pairwise Chernoff weights vanished");
    GaussianMixture out(std::move(fused));
    const double log_norm = out.normalize();
    if (!std::isfinite(log_norm)) throw EmptyFusionError("pairwise Chernoff mass is not finite");
    return {std::move(out), log_norm};
}

ChernoffResult gm_chernoff_multi(std::span<const WeightedMixture> inputs,
                                 const std::optional<ReductionParams>& pre_merge) {
    std::vector<WeightedMixture> active;
    for (const auto& in : inputs) {
        if (in.weight < 0.0) throw ValidationError("negative fusion weight");
        if (in.weight > 0.0) active.push_back(in);
    }
    if (active.empty()) throw ValidationError("GM fusion needs at least one positive weight");

    double running_weight = active.front().weight;
    ChernoffResult acc{active.front().mixture->normalized(), 0.0};
    if (active.size() == 1) return acc;

    for (std::size_t k = 1; k < active.size(); ++k) {
        const double next_weight = running_weight + active[k].weight;
        const double omega = running_weight / next_weight;
        ChernoffResult step;
        if (pre_merge) {
            step = gm_chernoff_pair(reduce(acc.mixture, *pre_merge), reduce(*active[k].mixture, *pre_merge),
                                    omega);
        } else {
            step = gm_chernoff_pair(acc.mixture, *active[k].mixture, omega);
        }
        // Z_k = Z_{k-1}^{s_{k-1}/s_k} · η_k
        acc.log_normalizer = omega * acc.log_normalizer + step.log_normalizer;
        acc.mixture = std::move(step.mixture);
        running_weight = next_weight;
    }
    return acc;
}

}  // namespace lrfs::gm
