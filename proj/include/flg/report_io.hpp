#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace flg {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal that round-trips back to exactly v.
std::string format_double(double v);

// A complex number as a two-element [re, im] array.
ordered_json json_complex(std::complex<double> z);

// Row-major nested arrays of [re, im] pairs.
ordered_json json_matrix(const Eigen::MatrixXcd& m);
ordered_json json_vector(const Eigen::VectorXcd& v);
ordered_json json_real_vector(const Eigen::VectorXd& v);

// "# matrix=<name> rows=<r> cols=<c>" comment, an "i,j,re,im" header, then
// one line per entry in row-major order.
void write_matrix_csv(std::ostream& os, std::string_view name,
                      const Eigen::MatrixXcd& m);

// "re,im" header followed by one point per line.
void write_scatter_csv(std::ostream& os,
                       const std::vector<std::pair<double, double>>& points);

}  // namespace flg
