#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>

namespace lrfs::gm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative eigenvalue floor: a symmetric matrix is accepted as positive
/// definite when its smallest eigenvalue exceeds this fraction of the largest.
inline constexpr double kPdRelativeTolerance = 1e-12;

[[nodiscard]] double log_sum_exp(std::span<const double> values);
[[nodiscard]] double log_sum_exp(double a, double b);

[[nodiscard]] Matrix symmetrize(const Matrix& m);

/// Eigenvalue-based test on the symmetrized matrix.
[[nodiscard]] bool is_positive_definite(const Matrix& m);

/// Throws NotPositiveDefiniteError naming `what` if `m` fails the test.
void require_positive_definite(const Matrix& m, const char* what);

/// Cholesky factor of a symmetric matrix together with its log-determinant.
/// Used on hot paths where a full eigen decomposition would be wasteful; the
/// relative test is applied to the squared pivots.
struct Cholesky {
    Eigen::LLT<Matrix> llt;
    double log_det = 0.0;

    [[nodiscard]] Matrix inverse() const;
    [[nodiscard]] Vector solve(const Vector& b) const { return llt.solve(b); }
    /// diffᵀ M⁻¹ diff
    [[nodiscard]] double quadratic_form(const Vector& diff) const;
};

[[nodiscard]] std::optional<Cholesky> try_cholesky(const Matrix& m);
[[nodiscard]] Cholesky cholesky_or_throw(const Matrix& m, const char* what);

/// log N(diff; 0, cov). Throws when cov is not positive definite.
[[nodiscard]] double log_normal(const Vector& diff, const Matrix& cov);

/// Multivariate normal N(mean, covariance).
struct Gaussian {
    Vector mean;
    Matrix covariance;

    Gaussian() = default;

    /// Validating constructor: symmetrizes the covariance and rejects it if it
    /// is not positive definite or the mean is not finite.
    Gaussian(Vector mean_in, Matrix covariance_in);

    /// Skips validation. Callers guarantee a symmetric PD covariance.
    [[nodiscard]] static Gaussian unchecked(Vector mean_in, Matrix covariance_in);

    [[nodiscard]] Eigen::Index dim() const { return mean.size(); }
    [[nodiscard]] double log_pdf(const Vector& x) const;
};

/// (Σ⁻¹, Σ⁻¹μ)
struct InformationPair {
    Matrix info_matrix;
    Vector info_vector;
};

[[nodiscard]] InformationPair to_information(const Gaussian& g);
[[nodiscard]] Gaussian from_information(const InformationPair& pair);

}  // namespace lrfs::gm
