#pragma once

#include <vector>

#include <Eigen/Dense>

#include "flg/case_io.hpp"
#include "flg/ybus.hpp"

namespace flg {

// Block view of the admittance matrix under the generator/load split:
//
//   Y = [ Y_GG  Y_GL ]
//       [ Y_LG  Y_LL ]
//
// gen_order/load_order list the bus ids backing each block row/column, in
// the bus declaration order of the source case.
struct PartitionedYbus {
  std::vector<int> gen_order;
  std::vector<int> load_order;
  Eigen::MatrixXcd Y_GG;  // m x m
  Eigen::MatrixXcd Y_GL;  // m x n
  Eigen::MatrixXcd Y_LG;  // n x m
  Eigen::MatrixXcd Y_LL;  // n x n

  Eigen::Index m() const { return Y_GG.rows(); }
  Eigen::Index n() const { return Y_LL.rows(); }
};

// Splits am by the bus kinds recorded in c. Throws MissingKind when a
// matrix id has no corresponding bus record.
PartitionedYbus partition(const AdmittanceMatrix& am, const GridCase& c);

// max |Y_LG - Y_GL^T|; zero whenever the source matrix is symmetric.
double transpose_check(const PartitionedYbus& p);

}  // namespace flg
