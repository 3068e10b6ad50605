#pragma once

#include <optional>

#include <Eigen/Dense>

#include "flg/partition.hpp"

namespace flg {

// Load-block impedance matrix and how it was obtained.
struct ZllResult {
  Eigen::MatrixXcd Z_LL;         // n x n
  bool used_pseudoinverse = false;
  Eigen::Index yll_rank = 0;
};

// The hybrid reformulation of I = Y * V around the generator/load split:
//
//   V_L = Z_LL * I_L + F_LG * V_G
//   I_G = K_GL * I_L + Y_GGM * V_G
//
// with Z_LL = inv(Y_LL) (or its pseudoinverse when Y_LL is rank
// deficient), F_LG = -Z_LL * Y_LG, K_GL = Y_GL * Z_LL, and
// Y_GGM = Y_GG - Y_GL * Z_LL * Y_LG (the reduced generator-side matrix).
// For symmetric source matrices K_GL == -F_LG^T.
struct HybridSystem {
  Eigen::MatrixXcd Z_LL;   // n x n
  Eigen::MatrixXcd F_LG;   // n x m
  Eigen::MatrixXcd K_GL;   // m x n
  Eigen::MatrixXcd Y_GGM;  // m x m
  bool used_pseudoinverse = false;
  Eigen::Index yll_rank = 0;
};

// One consistent set of bus injections and voltages, split by kind.
struct InjectionState {
  Eigen::VectorXcd I_G;
  Eigen::VectorXcd I_L;
  Eigen::VectorXcd V_G;
  Eigen::VectorXcd V_L;
};

// Inverts Y_LL. Full numerical rank takes the LU route; rank deficiency
// (or an LU pivot breakdown) falls back to the SVD pseudoinverse, flagged
// by used_pseudoinverse.
ZllResult compute_zll(const PartitionedYbus& p,
                      std::optional<double> rank_tol = std::nullopt);

// Builds the full hybrid system from the partitioned blocks.
HybridSystem compute_hybrid(const PartitionedYbus& p,
                            std::optional<double> rank_tol = std::nullopt);

// Evaluates the hybrid equations at the given load currents and generator
// voltages. Throws DimensionMismatch on shape errors.
InjectionState hybrid_solve(const HybridSystem& h, const Eigen::VectorXcd& I_L,
                            const Eigen::VectorXcd& V_G);

// Independent reference: solves the same problem directly from the full
// admittance matrix, re-extracting the blocks from am and using only the
// LU path (Y_LL * V_L = I_L - Y_LG * V_G, then I_G from the first block
// row). Shares no intermediate results with compute_hybrid, so agreement
// between the two routes cross-checks the whole reduction.
InjectionState direct_solve_oracle(const AdmittanceMatrix& am,
                                   const PartitionedYbus& p,
                                   const Eigen::VectorXcd& I_L,
                                   const Eigen::VectorXcd& V_G);

// max |K_GL + F_LG^T|: the two couplings are transposes of each other up
// to sign whenever the source matrix is symmetric.
double coupling_residual(const HybridSystem& h);

}  // namespace flg
