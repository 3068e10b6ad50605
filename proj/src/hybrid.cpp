#include "flg/hybrid.hpp"

#include <string>
#include <utility>

#include "flg/errors.hpp"
#include "flg/linalg.hpp"

namespace flg {
namespace {

void require_length(const Eigen::VectorXcd& v, Eigen::Index len, const char* name) {
  if (v.size() != len)
    throw DimensionMismatch(std::string(name) + " has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(len));
}

}  // namespace

ZllResult compute_zll(const PartitionedYbus& p, std::optional<double> rank_tol) {
  const Eigen::Index n = p.n();
  const SvdFactors f = svd(p.Y_LL);
  const Eigen::Index r = rank(f, rank_tol);
  if (r == n) {
    try {
      Eigen::MatrixXcd z = lu_solve(p.Y_LL, Eigen::MatrixXcd::Identity(n, n));
      return {std::move(z), false, r};
    } catch (const SingularMatrix&) {
      // Rank estimate and pivot test disagree near the singularity edge;
      // the pseudoinverse handles both regimes.
    }
  }
  return {pinv(f, rank_tol), true, r};
}

HybridSystem compute_hybrid(const PartitionedYbus& p, std::optional<double> rank_tol) {
  ZllResult z = compute_zll(p, rank_tol);
  const Eigen::MatrixXcd zy = z.Z_LL * p.Y_LG;  // n x m
  HybridSystem h;
  h.F_LG = -zy;
  h.K_GL = p.Y_GL * z.Z_LL;
  h.Y_GGM = p.Y_GG - p.Y_GL * zy;
  h.Z_LL = std::move(z.Z_LL);
  h.used_pseudoinverse = z.used_pseudoinverse;
  h.yll_rank = z.yll_rank;
  return h;
}

InjectionState hybrid_solve(const HybridSystem& h, const Eigen::VectorXcd& I_L,
                            const Eigen::VectorXcd& V_G) {
  require_length(I_L, h.Z_LL.rows(), "I_L");
  require_length(V_G, h.Y_GGM.rows(), "V_G");
  InjectionState s;
  s.I_L = I_L;
  s.V_G = V_G;
  s.V_L = h.Z_LL * I_L + h.F_LG * V_G;
  s.I_G = h.K_GL * I_L + h.Y_GGM * V_G;
  return s;
}

InjectionState direct_solve_oracle(const AdmittanceMatrix& am,
                                   const PartitionedYbus& p,
                                   const Eigen::VectorXcd& I_L,
                                   const Eigen::VectorXcd& V_G) {
  require_length(I_L, p.n(), "I_L");
  require_length(V_G, p.m(), "V_G");

  std::vector<Eigen::Index> gidx, lidx;
  gidx.reserve(p.gen_order.size());
  lidx.reserve(p.load_order.size());
  for (int id : p.gen_order) gidx.push_back(am.bus_index.at(id));
  for (int id : p.load_order) lidx.push_back(am.bus_index.at(id));

  const Eigen::MatrixXcd Y_GG = am.Y(gidx, gidx);
  const Eigen::MatrixXcd Y_GL = am.Y(gidx, lidx);
  const Eigen::MatrixXcd Y_LG = am.Y(lidx, gidx);
  const Eigen::MatrixXcd Y_LL = am.Y(lidx, lidx);

  InjectionState s;
  s.I_L = I_L;
  s.V_G = V_G;
  s.V_L = lu_solve(Y_LL, I_L - Y_LG * V_G);
  s.I_G = Y_GG * V_G + Y_GL * s.V_L;
  return s;
}

double coupling_residual(const HybridSystem& h) {
  if (h.K_GL.size() == 0) return 0.0;
  return (h.K_GL + h.F_LG.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace flg
