#include "flg/ybus.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace flg {

AdmittanceMatrix build_ybus(const GridCase& c, bool include_shunts) {
  const auto n = static_cast<Eigen::Index>(c.buses.size());
  AdmittanceMatrix am;
  am.Y = Eigen::MatrixXcd::Zero(n, n);
  am.shunts_included = include_shunts;
  am.bus_ids.reserve(c.buses.size());
  am.bus_index.reserve(c.buses.size());
  for (const Bus& bus : c.buses) {
    am.bus_index.emplace(bus.id, static_cast<int>(am.bus_ids.size()));
    am.bus_ids.push_back(bus.id);
  }

  for (const Branch& br : c.branches) {
    const Eigen::Index f = am.bus_index.at(br.from_bus);
    const Eigen::Index t = am.bus_index.at(br.to_bus);
    const std::complex<double> y = 1.0 / std::complex<double>(br.r, br.x);
    const std::complex<double> charging =
        include_shunts ? std::complex<double>(0.0, br.b / 2.0)
                       : std::complex<double>(0.0, 0.0);
    const double shift_rad = br.shift_deg * std::numbers::pi / 180.0;
    const std::complex<double> a = std::polar(br.tap, shift_rad);
    am.Y(f, f) += (y + charging) / (br.tap * br.tap);
    am.Y(t, t) += y + charging;
    am.Y(f, t) -= y / std::conj(a);
    am.Y(t, f) -= y / a;
  }

  if (include_shunts) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Bus& bus = c.buses[static_cast<std::size_t>(i)];
      am.Y(i, i) += std::complex<double>(bus.gs, bus.bs);
    }
  }
  return am;
}

Eigen::VectorXd row_sum_residuals(const AdmittanceMatrix& am) {
  return am.Y.rowwise().sum().cwiseAbs();
}

double symmetry_residual(const AdmittanceMatrix& am) {
  if (am.dim() == 0) return 0.0;
  return (am.Y - am.Y.transpose()).cwiseAbs().maxCoeff();
}

std::vector<std::pair<double, double>> ratio_scatter(const AdmittanceMatrix& am) {
  std::vector<std::pair<double, double>> pts;
  for (Eigen::Index i = 0; i < am.Y.rows(); ++i)
    for (Eigen::Index j = 0; j < am.Y.cols(); ++j) {
      const std::complex<double> z = am.Y(i, j);
      if (std::abs(z) > kStructuralZeroTol) pts.emplace_back(z.real(), z.imag());
    }
  return pts;
}

}  // namespace flg
