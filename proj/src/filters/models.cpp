#include "lrfs/filters/models.hpp"

#include "lrfs/errors.hpp"

#include <set>

namespace lrfs::filters {

MotionModel MotionModel::ncv(double sampling_interval, double sigma_w, double survival_prob) {
    const double t = sampling_interval;
    gm::Matrix block_f(2, 2);
    block_f << 1.0, t, 0.0, 1.0;
    gm::Matrix block_q(2, 2);
    block_q << t * t * t * t / 4.0, t * t * t / 2.0, t * t * t / 2.0, t * t;
    block_q *= sigma_w * sigma_w;

    MotionModel m;
    m.F = gm::Matrix::Zero(4, 4);
    m.Q = gm::Matrix::Zero(4, 4);
    m.F.block(0, 0, 2, 2) = block_f;
    m.F.block(2, 2, 2, 2) = block_f;
    m.Q.block(0, 0, 2, 2) = block_q;
    m.Q.block(2, 2, 2, 2) = block_q;
    m.survival_prob = survival_prob;
    m.validate();
    return m;
}

void MotionModel::validate() const {
    if (F.rows() != F.cols() || Q.rows() != F.rows() || Q.cols() != F.cols()) {
        throw ValidationError("motion model F and Q must be square and of equal size");
    }
    if (!Q.isApprox(Q.transpose())) throw ValidationError("process noise Q must be symmetric");
    Eigen::SelfAdjointEigenSolver<gm::Matrix> eig(Q);
    if (eig.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, eig.eigenvalues().maxCoeff())) {
        throw ValidationError("process noise Q must be positive semi-definite");
    }
    if (!(survival_prob >= 0.0 && survival_prob <= 1.0)) throw ValidationError("P_S must lie in [0,1]");
}

gm::Gaussian MotionModel::predict(const gm::Gaussian& g) const {
    gm::Matrix p = F * g.covariance * F.transpose() + Q;
    return gm::Gaussian::unchecked(F * g.mean, gm::symmetrize(p));
}

void BirthModel::validate() const {
    std::set<int> seen;
    for (const auto& e : entries) {
        if (e.index < 1) throw ValidationError("birth label index must be positive");
        if (!seen.insert(e.index).second) {
            throw ValidationError("birth label index " + std::to_string(e.index) + " repeats");
        }
        if (!(e.existence >= 0.0 && e.existence <= 1.0)) throw ValidationError("birth existence outside [0,1]");
        if (!e.pdf || e.pdf->empty()) throw ValidationError("birth entry has no pdf");
    }
}

void FilterConfig::validate() const {
    if (max_hypotheses < 1) throw ValidationError("max_hypotheses must be >= 1");
    if (assignments_per_hypothesis < 1) throw ValidationError("assignments_per_hypothesis must be >= 1");
    if (lmb_expansion_hypotheses < 1) throw ValidationError("lmb_expansion_hypotheses must be >= 1");
    if (!(hypothesis_prune >= 0.0 && hypothesis_prune < 1.0)) throw ValidationError("hypothesis_prune outside [0,1)");
    if (!(existence_prune >= 0.0 && existence_prune < 1.0)) throw ValidationError("existence_prune outside [0,1)");
    if (reduction.max_components < 1) throw ValidationError("max_components must be >= 1");
    if (!(clutter_floor > 0.0)) throw ValidationError("clutter_floor must be positive");
    if (!(gate > 0.0)) throw ValidationError("gate must be positive");
}

}  // namespace lrfs::filters
