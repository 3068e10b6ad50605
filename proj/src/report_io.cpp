#include "flg/report_io.hpp"

#include <charconv>
#include <ostream>

namespace flg {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered_json json_complex(std::complex<double> z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json json_matrix(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json_complex(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json json_vector(const Eigen::VectorXcd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json_complex(v(i)));
  return out;
}

ordered_json json_real_vector(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void write_matrix_csv(std::ostream& os, std::string_view name,
                      const Eigen::MatrixXcd& m) {
  os << "# matrix=" << name << " rows=" << m.rows() << " cols=" << m.cols() << "\n";
  os << "i,j,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << i << "," << j << "," << format_double(m(i, j).real()) << ","
         << format_double(m(i, j).imag()) << "\n";
}

void write_scatter_csv(std::ostream& os,
                       const std::vector<std::pair<double, double>>& points) {
  os << "re,im\n";
  for (const auto& [re, im] : points)
    os << format_double(re) << "," << format_double(im) << "\n";
}

}  // namespace flg
