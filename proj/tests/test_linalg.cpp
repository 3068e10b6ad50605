#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>

#include "flg/errors.hpp"
#include "flg/linalg.hpp"
#include "helpers.hpp"

using Eigen::MatrixXcd;
using Complexd = std::complex<double>;

namespace {

MatrixXcd random_matrix(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols) {
  testutil::TestRng rng(seed);
  MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.unit_complex();
  return m;
}

// Random square matrix pushed away from singularity by a diagonal shift.
MatrixXcd well_conditioned(std::uint64_t seed, Eigen::Index n) {
  MatrixXcd m = random_matrix(seed, n, n);
  m += 4.0 * MatrixXcd::Identity(n, n);
  return m;
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("lu_solve recovers a planted solution") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const MatrixXcd a = well_conditioned(seed, 8);
    const MatrixXcd x_true = random_matrix(seed + 100, 8, 3);
    const MatrixXcd x = flg::lu_solve(a, a * x_true);
    CAPTURE(seed);
    CHECK(max_abs(x - x_true) < 1e-12);
  }
}

TEST_CASE("lu_solve validates its operands") {
  const MatrixXcd sq = well_conditioned(1, 4);
  CHECK_THROWS_AS(flg::lu_solve(random_matrix(2, 3, 4), sq), flg::DimensionMismatch);
  CHECK_THROWS_AS(flg::lu_solve(sq, random_matrix(3, 5, 2)), flg::DimensionMismatch);

  MatrixXcd bad = sq;
  bad(1, 2) = Complexd(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(flg::lu_solve(bad, sq), flg::InvalidInput);
  bad(1, 2) = Complexd(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(flg::lu_solve(sq, bad), flg::InvalidInput);
}

TEST_CASE("lu_solve rejects singular systems") {
  MatrixXcd a(3, 3);
  a << Complexd(1, 1), Complexd(2, 0), Complexd(0, 3),
       Complexd(2, 2), Complexd(4, 0), Complexd(0, 6),  // 2x the first row
       Complexd(0, 1), Complexd(1, 1), Complexd(5, 0);
  const MatrixXcd b = MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(flg::lu_solve(a, b), flg::SingularMatrix);
  CHECK_THROWS_AS(flg::lu_solve(MatrixXcd::Zero(3, 3), b), flg::SingularMatrix);
}

TEST_CASE("svd reconstructs the matrix with ordered factors") {
  const std::pair<Eigen::Index, Eigen::Index> shapes[] = {{5, 3}, {3, 5}, {4, 4}};
  for (const auto& [rows, cols] : shapes) {
    const MatrixXcd a = random_matrix(31 + static_cast<std::uint64_t>(rows), rows, cols);
    const auto f = flg::svd(a);
    const Eigen::Index k = std::min(rows, cols);
    REQUIRE(f.U.rows() == rows);
    REQUIRE(f.U.cols() == k);
    REQUIRE(f.V.rows() == cols);
    REQUIRE(f.V.cols() == k);
    REQUIRE(f.S.size() == k);
    CAPTURE(rows);
    CAPTURE(cols);
    CHECK(max_abs(f.U * f.S.asDiagonal() * f.V.adjoint() - a) < 1e-12);
    CHECK(max_abs(f.U.adjoint() * f.U - MatrixXcd::Identity(k, k)) < 1e-12);
    CHECK(max_abs(f.V.adjoint() * f.V - MatrixXcd::Identity(k, k)) < 1e-12);
    for (Eigen::Index i = 0; i + 1 < k; ++i) CHECK(f.S(i) >= f.S(i + 1));
    CHECK(f.S(k - 1) >= 0.0);
  }
}

TEST_CASE("svd of a complex diagonal yields its magnitudes") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = Complexd(3.0, 0.0);
  a(1, 1) = Complexd(0.0, 4.0);
  const auto f = flg::svd(a);
  CHECK(f.S(0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(f.S(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("pinv inverts nonsingular square matrices") {
  const MatrixXcd a = well_conditioned(77, 6);
  const MatrixXcd api = flg::pinv(a);
  CHECK(max_abs(a * api - MatrixXcd::Identity(6, 6)) < 1e-12);
  CHECK(max_abs(api * a - MatrixXcd::Identity(6, 6)) < 1e-12);
}

TEST_CASE("pinv satisfies the four pseudoinverse identities on deficient input") {
  // Rank-1 outer product, five rows by three columns.
  const MatrixXcd u = random_matrix(41, 5, 1);
  const MatrixXcd v = random_matrix(42, 3, 1);
  const MatrixXcd a = u * v.adjoint();
  REQUIRE(flg::rank(a) == 1);

  const MatrixXcd api = flg::pinv(a);
  REQUIRE(api.rows() == 3);
  REQUIRE(api.cols() == 5);
  CHECK(max_abs(a * api * a - a) < 1e-9);
  CHECK(max_abs(api * a * api - api) < 1e-9);
  CHECK(max_abs((a * api).adjoint() - a * api) < 1e-9);
  CHECK(max_abs((api * a).adjoint() - api * a) < 1e-9);
}

TEST_CASE("rank counts singular values above the relative cutoff") {
  CHECK(flg::default_rank_tol(3, 3) ==
        3.0 * std::numeric_limits<double>::epsilon());
  CHECK(flg::default_rank_tol(99, 19) ==
        99.0 * std::numeric_limits<double>::epsilon());

  MatrixXcd a = MatrixXcd::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-5;
  a(2, 2) = 1e-16;  // below 3 * eps * 1: treated as zero
  CHECK(flg::rank(a) == 2);
  CHECK(flg::rank(a, 1e-4) == 1);   // coarser cutoff drops 1e-5 too
  CHECK(flg::rank(a, 1e-17) == 3);  // finer cutoff keeps everything

  // The dropped direction is annihilated rather than amplified.
  const MatrixXcd api = flg::pinv(a);
  CHECK(std::abs(api(2, 2)) == 0.0);
  CHECK(std::abs(api(1, 1) - 1e5) < 1e-6);
}

TEST_CASE("factor-level and matrix-level entry points agree") {
  const MatrixXcd a = random_matrix(55, 6, 4);
  const auto f = flg::svd(a);
  CHECK(flg::rank(a) == flg::rank(f));
  CHECK(max_abs(flg::pinv(a) - flg::pinv(f)) == 0.0);
}
