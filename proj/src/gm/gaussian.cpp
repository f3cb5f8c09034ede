#include "lrfs/gm/gaussian.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lrfs::gm {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

double log_sum_exp(std::span<const double> values) {
    double max = -std::numeric_limits<double>::infinity();
    for (double v : values) max = std::max(max, v);
    if (!std::isfinite(max)) return max;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - max);
    return max + std::log(sum);
}

double log_sum_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (a == -std::numeric_limits<double>::infinity()) return a;
    if (!std::isfinite(a)) return a;
    return a + std::log1p(std::exp(b - a));
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool is_positive_definite(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!m.allFinite()) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) return false;
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    return hi > 0.0 && lo > kPdRelativeTolerance * hi;
}

void require_positive_definite(const Matrix& m, const char* what) {
    if (!is_positive_definite(m)) {
        throw NotPositiveDefiniteError(std::string(what) + " is not positive definite");
    }
}

Matrix Cholesky::inverse() const {
    return llt.solve(Matrix::Identity(llt.rows(), llt.cols()));
}

double Cholesky::quadratic_form(const Vector& diff) const {
    const Vector y = llt.matrixL().solve(diff);
    return y.squaredNorm();
}

std::optional<Cholesky> try_cholesky(const Matrix& m) {
    Cholesky c{Eigen::LLT<Matrix>(symmetrize(m)), 0.0};
    if (c.llt.info() != Eigen::Success) return std::nullopt;
    const auto diag = c.llt.matrixLLT().diagonal();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double p = diag[i] * diag[i];
        if (!std::isfinite(p)) return std::nullopt;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
        c.log_det += std::log(p);
    }
    if (!(hi > 0.0) || !(lo > kPdRelativeTolerance * hi)) return std::nullopt;
    return c;
}

Cholesky cholesky_or_throw(const Matrix& m, const char* what) {
    auto c = try_cholesky(m);
    if (!c) throw NotPositiveDefiniteError(std::string(what) + " is not positive definite");
    return std::move(*c);
}

double log_normal(const Vector& diff, const Matrix& cov) {
    const Cholesky c = cholesky_or_throw(cov, "normal covariance");
    return -0.5 * (static_cast<double>(diff.size()) * kLog2Pi + c.log_det + c.quadratic_form(diff));
}

Gaussian::Gaussian(Vector mean_in, Matrix covariance_in)
    : mean(std::move(mean_in)), covariance(symmetrize(covariance_in)) {
    if (covariance.rows() != mean.size() || covariance.cols() != mean.size()) {
        throw ValidationError("Gaussian: covariance shape does not match mean dimension");
    }
    if (!mean.allFinite()) throw ValidationError("Gaussian: mean is not finite");
    require_positive_definite(covariance, "Gaussian covariance");
}

Gaussian Gaussian::unchecked(Vector mean_in, Matrix covariance_in) {
    Gaussian g;
    g.mean = std::move(mean_in);
    g.covariance = std::move(covariance_in);
    return g;
}

double Gaussian::log_pdf(const Vector& x) const { return log_normal(x - mean, covariance); }

InformationPair to_information(const Gaussian& g) {
    const Cholesky c = cholesky_or_throw(g.covariance, "covariance");
    InformationPair pair;
    pair.info_matrix = symmetrize(c.inverse());
    pair.info_vector = c.solve(g.mean);
    return pair;
}

Gaussian from_information(const InformationPair& pair) {
    const Cholesky c = cholesky_or_throw(pair.info_matrix, "information matrix");
    Matrix cov = symmetrize(c.inverse());
    Vector mean = cov * pair.info_vector;
    return Gaussian::unchecked(std::move(mean), std::move(cov));
}

}  // namespace lrfs::gm
