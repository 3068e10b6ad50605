#include "flg/linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "flg/errors.hpp"

namespace flg {
namespace {

void require_finite(const Eigen::MatrixXcd& m, const char* name) {
  if (!m.allFinite())
    throw InvalidInput(std::string(name) + " contains NaN or infinite entries");
}

double cutoff(const SvdFactors& f, std::optional<double> rank_tol) {
  const double smax = f.S.size() ? f.S.maxCoeff() : 0.0;
  const double tol = rank_tol ? *rank_tol : default_rank_tol(f.U.rows(), f.V.rows());
  return tol * smax;
}

}  // namespace

double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

Eigen::MatrixXcd lu_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("lu_solve: A is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", expected square");
  if (A.rows() != B.rows())
    throw DimensionMismatch("lu_solve: A has " + std::to_string(A.rows()) +
                            " rows but B has " + std::to_string(B.rows()));
  require_finite(A, "lu_solve: A");
  require_finite(B, "lu_solve: B");

  const double amax = A.size() ? A.cwiseAbs().maxCoeff() : 0.0;
  if (amax == 0.0) throw SingularMatrix("lu_solve: zero matrix");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (pivot_min < kLuPivotRel * amax)
    throw SingularMatrix("lu_solve: pivot " + std::to_string(pivot_min) +
                         " below " + std::to_string(kLuPivotRel * amax) +
                         " (relative threshold " + std::to_string(kLuPivotRel) + ")");
  return lu.solve(B);
}

SvdFactors svd(const Eigen::MatrixXcd& A) {
  require_finite(A, "svd: A");
  Eigen::JacobiSVD<Eigen::MatrixXcd> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success)
    throw NoConvergence("svd: decomposition of " + std::to_string(A.rows()) + "x" +
                        std::to_string(A.cols()) + " matrix did not converge");
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& A, std::optional<double> rank_tol) {
  return pinv(svd(A), rank_tol);
}

Eigen::MatrixXcd pinv(const SvdFactors& f, std::optional<double> rank_tol) {
  const double cut = cutoff(f, rank_tol);
  Eigen::VectorXd sinv = Eigen::VectorXd::Zero(f.S.size());
  for (Eigen::Index i = 0; i < f.S.size(); ++i)
    if (f.S(i) > cut) sinv(i) = 1.0 / f.S(i);
  return f.V * sinv.asDiagonal() * f.U.adjoint();
}

Eigen::Index rank(const Eigen::MatrixXcd& A, std::optional<double> rank_tol) {
  return rank(svd(A), rank_tol);
}

Eigen::Index rank(const SvdFactors& f, std::optional<double> rank_tol) {
  const double cut = cutoff(f, rank_tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < f.S.size(); ++i)
    if (f.S(i) > cut) ++r;
  return r;
}

}  // namespace flg
