#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flg/case_io.hpp"

namespace flg {

// Entries whose magnitude falls below this are treated as structural zeros
// when scanning matrix populations (scatter plots, ratio statistics).
inline constexpr double kStructuralZeroTol = 1e-12;

// Dense bus admittance matrix together with the id <-> index mapping that
// fixes its row/column order (bus declaration order of the source case).
struct AdmittanceMatrix {
  Eigen::MatrixXcd Y;
  std::vector<int> bus_ids;                 // index -> bus id
  std::unordered_map<int, int> bus_index;   // bus id -> index
  bool shunts_included = true;

  Eigen::Index dim() const { return Y.rows(); }
};

// Assembles the admittance matrix by stamping every branch and, when
// include_shunts is set, the line-charging and bus shunt elements.
// For a branch with series admittance y = 1/(r + ix) and complex ratio
// a = tap * exp(i*shift):
//   Y(f,f) += (y + i*b/2) / tap^2      (charging term only with shunts)
//   Y(t,t) +=  y + i*b/2               (charging term only with shunts)
//   Y(f,t) -=  y / conj(a)
//   Y(t,f) -=  y / a
// Bus shunts add gs + i*bs on the diagonal. Without shunt elements and
// phase shifts the result is a complex weighted graph Laplacian (symmetric,
// and with unit taps every row sums to zero).
AdmittanceMatrix build_ybus(const GridCase& c, bool include_shunts = true);

// |sum of row k| for every row; zero rows certify Laplacian structure.
Eigen::VectorXd row_sum_residuals(const AdmittanceMatrix& am);

// max |Y - Y^T|; exactly zero for shift-free cases.
double symmetry_residual(const AdmittanceMatrix& am);

// (Re, Im) of every entry with |Y_ij| > kStructuralZeroTol, row-major.
std::vector<std::pair<double, double>> ratio_scatter(const AdmittanceMatrix& am);

}  // namespace flg
