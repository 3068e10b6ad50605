#pragma once

#include <optional>

#include <Eigen/Dense>

namespace flg {

// Relative pivot threshold: an LU factorization whose smallest pivot falls
// below kLuPivotRel * max|A| is rejected as numerically singular.
inline constexpr double kLuPivotRel = 1e-13;

// Thin singular value decomposition A = U * diag(S) * V^H with S sorted in
// descending order; U is rows x k, V is cols x k, k = min(rows, cols).
struct SvdFactors {
  Eigen::MatrixXcd U;
  Eigen::VectorXd S;
  Eigen::MatrixXcd V;
};

// Default relative rank tolerance: max(rows, cols) * machine epsilon, so the
// effective cutoff rank_tol * S_max is the spacing of doubles near S_max
// scaled by the larger dimension.
double default_rank_tol(Eigen::Index rows, Eigen::Index cols);

// Solves A * X = B via partially pivoted LU. Throws DimensionMismatch on
// shape errors, InvalidInput on NaN/Inf operands, and SingularMatrix when
// the smallest pivot is below kLuPivotRel * max|A| (callers that tolerate
// rank deficiency fall back to pinv).
Eigen::MatrixXcd lu_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Thin SVD; throws InvalidInput on NaN/Inf and NoConvergence if the
// decomposition fails to converge.
SvdFactors svd(const Eigen::MatrixXcd& A);

// Moore-Penrose pseudoinverse: singular values <= rank_tol * S_max are
// treated as zero. rank_tol defaults to default_rank_tol for A's shape.
Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& A,
                      std::optional<double> rank_tol = std::nullopt);
Eigen::MatrixXcd pinv(const SvdFactors& f,
                      std::optional<double> rank_tol = std::nullopt);

// Numerical rank: count of singular values strictly above rank_tol * S_max.
Eigen::Index rank(const Eigen::MatrixXcd& A,
                  std::optional<double> rank_tol = std::nullopt);
Eigen::Index rank(const SvdFactors& f,
                  std::optional<double> rank_tol = std::nullopt);

}  // namespace flg
