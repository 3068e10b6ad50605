#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "flg/partition.hpp"
#include "flg/ybus.hpp"
#include "helpers.hpp"
#include "random_case.hpp"

namespace {

// Four buses on a ring with generator/load kinds interleaved.
flg::GridCase interleaved_ring() {
  flg::GridCase c;
  c.name = "ring";
  c.buses = {{1, flg::BusKind::Load, 0.0, 0.0},
             {2, flg::BusKind::Generator, 0.0, 0.0},
             {3, flg::BusKind::Load, 0.0, 0.0},
             {4, flg::BusKind::Generator, 0.0, 0.0}};
  c.branches = {{1, 2, 0.1, 0.4, 0.0, 1.0, 0.0},
                {2, 3, 0.2, 0.6, 0.0, 1.0, 0.0},
                {3, 4, 0.05, 0.3, 0.0, 1.0, 0.0},
                {4, 1, 0.15, 0.5, 0.0, 1.0, 0.0}};
  return c;
}

}  // namespace

TEST_CASE("splits blocks by declared kind, preserving declaration order") {
  const auto c = interleaved_ring();
  const auto am = flg::build_ybus(c);
  const auto p = flg::partition(am, c);

  CHECK(p.gen_order == std::vector<int>{2, 4});
  CHECK(p.load_order == std::vector<int>{1, 3});
  REQUIRE(p.m() == 2);
  REQUIRE(p.n() == 2);
  CHECK(p.Y_GG.rows() == 2);
  CHECK(p.Y_GL.cols() == 2);

  // Every block entry is the matrix entry at the mapped positions.
  const std::vector<int> g = {1, 3};  // indices of buses 2 and 4 in Y
  const std::vector<int> l = {0, 2};  // indices of buses 1 and 3 in Y
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(p.Y_GG(i, j) == am.Y(g[i], g[j]));
      CHECK(p.Y_GL(i, j) == am.Y(g[i], l[j]));
      CHECK(p.Y_LG(i, j) == am.Y(l[i], g[j]));
      CHECK(p.Y_LL(i, j) == am.Y(l[i], l[j]));
    }
}

TEST_CASE("reassembling the blocks reproduces the matrix exactly") {
  const auto c = flg::gen_random({99, 10, 4, /*shunts=*/true});
  const auto am = flg::build_ybus(c);
  const auto p = flg::partition(am, c);

  Eigen::MatrixXcd rebuilt(am.dim(), am.dim());
  std::vector<Eigen::Index> gidx, lidx;
  for (int id : p.gen_order) gidx.push_back(am.bus_index.at(id));
  for (int id : p.load_order) lidx.push_back(am.bus_index.at(id));
  for (Eigen::Index i = 0; i < p.m(); ++i)
    for (Eigen::Index j = 0; j < p.m(); ++j) rebuilt(gidx[i], gidx[j]) = p.Y_GG(i, j);
  for (Eigen::Index i = 0; i < p.m(); ++i)
    for (Eigen::Index j = 0; j < p.n(); ++j) rebuilt(gidx[i], lidx[j]) = p.Y_GL(i, j);
  for (Eigen::Index i = 0; i < p.n(); ++i)
    for (Eigen::Index j = 0; j < p.m(); ++j) rebuilt(lidx[i], gidx[j]) = p.Y_LG(i, j);
  for (Eigen::Index i = 0; i < p.n(); ++i)
    for (Eigen::Index j = 0; j < p.n(); ++j) rebuilt(lidx[i], lidx[j]) = p.Y_LL(i, j);
  CHECK((rebuilt - am.Y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("118-bus blocks have the expected shapes") {
  const auto c = testutil::load_ieee118();
  const auto am = flg::build_ybus(c);
  const auto p = flg::partition(am, c);
  CHECK(p.m() == 19);
  CHECK(p.n() == 99);
  CHECK(p.Y_GG.rows() == 19);
  CHECK(p.Y_GG.cols() == 19);
  CHECK(p.Y_GL.rows() == 19);
  CHECK(p.Y_GL.cols() == 99);
  CHECK(p.Y_LG.rows() == 99);
  CHECK(p.Y_LG.cols() == 19);
  CHECK(p.Y_LL.rows() == 99);
  CHECK(p.Y_LL.cols() == 99);
  // Ids ascend because the file declares buses in ascending order.
  CHECK(std::is_sorted(p.gen_order.begin(), p.gen_order.end()));
  CHECK(p.gen_order.front() == 10);
  CHECK(p.gen_order.back() == 111);
}

TEST_CASE("off-diagonal blocks are mutual transposes for symmetric input") {
  const auto c = testutil::load_ieee118();
  const auto p = flg::partition(flg::build_ybus(c), c);
  CHECK(flg::transpose_check(p) == 0.0);

  SUBCASE("a boundary-crossing phase shifter breaks the relation") {
    auto shifted = c;
    const auto is_gen = [&](int id) {
      return c.find_bus(id)->kind == flg::BusKind::Generator;
    };
    // The shifter must sit between the two groups to show up in the
    // off-diagonal blocks.
    for (auto& br : shifted.branches) {
      if (is_gen(br.from_bus) != is_gen(br.to_bus)) {
        br.shift_deg = 15.0;
        break;
      }
    }
    const auto ps = flg::partition(flg::build_ybus(shifted), shifted);
    CHECK(flg::transpose_check(ps) > 1e-3);
  }
}

TEST_CASE("unclassified matrix ids are rejected") {
  const auto c = interleaved_ring();
  const auto am = flg::build_ybus(c);
  auto mismatched = c;
  mismatched.buses.pop_back();  // bus 4 still appears in am
  CHECK_THROWS_AS(flg::partition(am, mismatched), flg::MissingKind);
}
