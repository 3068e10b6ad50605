#include "flg/properties.hpp"

#include <cmath>
#include <string>

#include "flg/errors.hpp"

namespace flg {
namespace {

// Magnitude-weighted mean of Im/Re over the entries of one row, skipping
// structural zeros and counting entries whose real part is too small to
// divide by.
struct RatioAccumulator {
  double weight_sum = 0.0;
  double weighted_ratio_sum = 0.0;
  std::int64_t undefined = 0;

  void add(std::complex<double> z) {
    const double mag = std::abs(z);
    if (mag <= kStructuralZeroTol) return;
    if (std::abs(z.real()) <= kUndefinedRatioTol) {
      ++undefined;
      return;
    }
    weight_sum += mag;
    weighted_ratio_sum += mag * (z.imag() / z.real());
  }

  double mean() const { return weight_sum > 0.0 ? weighted_ratio_sum / weight_sum : 0.0; }
};

bool ratio_defined(std::complex<double> z) {
  return std::abs(z) > kStructuralZeroTol &&
         std::abs(z.real()) > kUndefinedRatioTol;
}

}  // namespace

RowSumReport check_row_sums(const HybridSystem& h, const AdmittanceMatrix& am,
                            double tol) {
  RowSumReport rep;
  rep.q = h.F_LG.rowwise().sum();
  for (Eigen::Index i = 0; i < rep.q.size(); ++i) rep.q(i) -= 1.0;
  rep.max_abs_q = rep.q.size() ? rep.q.cwiseAbs().maxCoeff() : 0.0;
  rep.ybus_row_residuals = row_sum_residuals(am);
  const double ymax = am.dim() ? am.Y.cwiseAbs().maxCoeff() : 0.0;
  const double worst_row = am.dim() ? rep.ybus_row_residuals.maxCoeff() : 0.0;
  rep.asserted = !h.used_pseudoinverse && worst_row < kLaplacianRowTol * ymax;
  rep.ok = !rep.asserted || rep.max_abs_q < tol;
  return rep;
}

RealnessReport check_realness(const HybridSystem& h, const AdmittanceMatrix& am,
                              double tol) {
  RealnessReport rep;
  if (h.F_LG.size() != 0) {
    rep.max_abs_imag = h.F_LG.imag().cwiseAbs().maxCoeff();
    rep.max_abs_real = h.F_LG.real().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < h.F_LG.rows(); ++i)
      for (Eigen::Index j = 0; j < h.F_LG.cols(); ++j) {
        const double re = h.F_LG(i, j).real();
        if (re < -tol) rep.negativity_violations.push_back({i, j, re});
      }
  }
  rep.sign_pattern_ok = sign_pattern_check(am, tol).ok;
  return rep;
}

SignPatternResult sign_pattern_check(const AdmittanceMatrix& am, double tol) {
  SignPatternResult res;
  for (Eigen::Index i = 0; i < am.Y.rows(); ++i)
    for (Eigen::Index j = 0; j < am.Y.cols(); ++j) {
      const std::complex<double> z = am.Y(i, j);
      const bool bad = i == j ? (z.real() < -tol || z.imag() > tol)
                              : (z.real() > tol || z.imag() < -tol);
      if (bad) res.violations.push_back({i, j, z});
    }
  res.ok = res.violations.empty();
  return res;
}

RatioProfile row_ratio_profile(const PartitionedYbus& p) {
  RatioProfile prof;
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  prof.u = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    RatioAccumulator acc;
    for (Eigen::Index j = 0; j < n; ++j) acc.add(p.Y_LL(k, j));
    for (Eigen::Index j = 0; j < m; ++j) acc.add(p.Y_LG(k, j));
    prof.u(k) = acc.mean();
    prof.undefined_entries += acc.undefined;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    auto spread = [&](std::complex<double> z) {
      if (!ratio_defined(z)) return;
      const double dev = std::abs(z.imag() / z.real() - prof.u(k));
      if (dev > prof.max_spread) prof.max_spread = dev;
    };
    for (Eigen::Index j = 0; j < n; ++j) spread(p.Y_LL(k, j));
    for (Eigen::Index j = 0; j < m; ++j) spread(p.Y_LG(k, j));
  }
  return prof;
}

Eigen::VectorXd full_row_ratio_profile(const AdmittanceMatrix& am) {
  const Eigen::Index dim = am.dim();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    RatioAccumulator acc;
    for (Eigen::Index j = 0; j < dim; ++j) acc.add(am.Y(k, j));
    u(k) = acc.mean();
  }
  return u;
}

AdmittanceMatrix homogenize(const AdmittanceMatrix& am, const Eigen::VectorXd& u_rows) {
  if (u_rows.size() != am.dim())
    throw DimensionMismatch("homogenize: ratio vector has length " +
                            std::to_string(u_rows.size()) + ", expected " +
                            std::to_string(am.dim()));
  AdmittanceMatrix out = am;
  for (Eigen::Index i = 0; i < out.Y.rows(); ++i)
    for (Eigen::Index j = 0; j < out.Y.cols(); ++j) {
      const double re = out.Y(i, j).real();
      out.Y(i, j) = std::complex<double>(re, re * u_rows(i));
    }
  return out;
}

AdmittanceMatrix homogenize(const AdmittanceMatrix& am, double u_global) {
  return homogenize(am, Eigen::VectorXd::Constant(am.dim(), u_global));
}

double check_real_system(const PartitionedYbus& p, const Eigen::MatrixXcd& F_LG) {
  if (F_LG.rows() != p.n() || F_LG.cols() != p.m())
    throw DimensionMismatch("check_real_system: F_LG is " +
                            std::to_string(F_LG.rows()) + "x" +
                            std::to_string(F_LG.cols()) + ", expected " +
                            std::to_string(p.n()) + "x" + std::to_string(p.m()));
  const RatioProfile prof = row_ratio_profile(p);
  if (prof.max_spread >= kHomogeneousSpreadTol)
    throw PreconditionViolated(
        "check_real_system requires one Im:Re ratio per load row; spread " +
        std::to_string(prof.max_spread) + " exceeds " +
        std::to_string(kHomogeneousSpreadTol));
  if (F_LG.size() == 0) return 0.0;
  const Eigen::MatrixXd residual =
      p.Y_LL.real() * F_LG.real() + p.Y_LG.real();
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace flg
