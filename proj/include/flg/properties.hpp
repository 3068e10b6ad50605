#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "flg/hybrid.hpp"
#include "flg/partition.hpp"
#include "flg/ybus.hpp"

namespace flg {

// Default tolerance for "row sums of F_LG equal one".
inline constexpr double kRowSumTolDefault = 1e-8;
// Default tolerance for realness / sign scans.
inline constexpr double kRealTolDefault = 1e-10;
// |Re| at or below this makes an entry's Im:Re ratio undefined.
inline constexpr double kUndefinedRatioTol = 1e-12;
// Row-sum residual of the source matrix must stay below this (relative to
// max|Y|) for the unity-row-sum property to be asserted.
inline constexpr double kLaplacianRowTol = 1e-12;
// Ratio spread at or above this disqualifies a matrix from the
// homogeneous-ratio real-system check.
inline constexpr double kHomogeneousSpreadTol = 1e-10;

// Per-load-row Im:Re ratio statistics of [Y_LL | Y_LG]. u(k) is the
// magnitude-weighted mean ratio of row k over entries with a well-defined
// ratio; max_spread is the largest |ratio - u(k)| seen anywhere, and
// undefined_entries counts nonzero entries whose |Re| <= kUndefinedRatioTol
// (their ratio is unusable, so they are excluded from the statistics).
struct RatioProfile {
  Eigen::VectorXd u;
  double max_spread = 0.0;
  std::int64_t undefined_entries = 0;
};

// Residuals q = F_LG * ones - ones. The property is asserted (expected to
// hold) only when the source matrix has Laplacian load rows within
// kLaplacianRowTol * max|Y| and Z_LL came from a true inverse.
struct RowSumReport {
  Eigen::VectorXcd q;
  double max_abs_q = 0.0;
  Eigen::VectorXd ybus_row_residuals;
  bool asserted = false;
  bool ok = true;  // passes whenever asserted implies max_abs_q < tol
};

struct NegativityViolation {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  double value = 0.0;  // offending real part, < -tol
};

struct SignViolation {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  std::complex<double> value;
};

struct SignPatternResult {
  bool ok = true;
  std::vector<SignViolation> violations;
};

struct RealnessReport {
  double max_abs_imag = 0.0;
  double max_abs_real = 0.0;
  std::vector<NegativityViolation> negativity_violations;
  bool sign_pattern_ok = false;
};

// Row-sum check of F_LG against the source matrix the reduction came from.
RowSumReport check_row_sums(const HybridSystem& h, const AdmittanceMatrix& am,
                            double tol = kRowSumTolDefault);

// Imaginary-part magnitude and negative-real-part scan of F_LG, plus the
// source-matrix sign pattern summary that predicts entrywise
// non-negativity.
RealnessReport check_realness(const HybridSystem& h, const AdmittanceMatrix& am,
                              double tol = kRealTolDefault);

// Checks the sign pattern that makes the reduced system an M-matrix
// problem: diagonals with Re >= 0 and Im <= 0, off-diagonals with Re <= 0
// and Im >= 0, all within tol.
SignPatternResult sign_pattern_check(const AdmittanceMatrix& am,
                                     double tol = kRealTolDefault);

// Ratio statistics of the load rows [Y_LL | Y_LG].
RatioProfile row_ratio_profile(const PartitionedYbus& p);

// Magnitude-weighted mean Im:Re ratio of every row of the full matrix; on
// load rows this coincides with row_ratio_profile (a load row of Y is the
// concatenation of its Y_LG and Y_LL entries).
Eigen::VectorXd full_row_ratio_profile(const AdmittanceMatrix& am);

// Rewrites every entry of row k as Re(entry) * (1 + i * u_k): the imaginary
// parts are forced onto the per-row ratio while real parts (and hence real
// row sums) are preserved. The scalar overload applies one ratio globally.
AdmittanceMatrix homogenize(const AdmittanceMatrix& am, const Eigen::VectorXd& u_rows);
AdmittanceMatrix homogenize(const AdmittanceMatrix& am, double u_global);

// For a matrix whose load rows share one Im:Re ratio, F_LG also solves the
// real system Re(Y_LL) * F_LG = -Re(Y_LG); returns the max-norm residual
// of that system. Throws PreconditionViolated when the ratio spread is
// kHomogeneousSpreadTol or larger.
double check_real_system(const PartitionedYbus& p, const Eigen::MatrixXcd& F_LG);

}  // namespace flg
