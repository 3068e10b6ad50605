#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flg/case_io.hpp"

namespace testutil {

// Two buses joined by one line of impedance 0.1 + 0.5i; bus 1 generates.
inline flg::GridCase two_bus(double b = 0.0) {
  flg::GridCase c;
  c.name = "two-bus";
  c.buses = {{1, flg::BusKind::Generator, 0.0, 0.0},
             {2, flg::BusKind::Load, 0.0, 0.0}};
  c.branches = {{1, 2, 0.1, 0.5, b, 1.0, 0.0}};
  return c;
}

// Star around one load bus: generators 1 and 2 feed bus 3 through lines
// with admittances 2 - 6i and 1 - 3i (one shared Im:Re ratio of -3).
inline flg::GridCase three_star() {
  flg::GridCase c;
  c.name = "three-star";
  c.buses = {{1, flg::BusKind::Generator, 0.0, 0.0},
             {2, flg::BusKind::Generator, 0.0, 0.0},
             {3, flg::BusKind::Load, 0.0, 0.0}};
  c.branches = {{1, 3, 0.05, 0.15, 0.0, 1.0, 0.0},
                {2, 3, 0.1, 0.3, 0.0, 1.0, 0.0}};
  return c;
}

// Generator 1 feeds load 2; load 3 is declared but connected to nothing,
// so the load block is rank deficient.
inline flg::GridCase isolated_load() {
  flg::GridCase c;
  c.name = "isolated-load";
  c.buses = {{1, flg::BusKind::Generator, 0.0, 0.0},
             {2, flg::BusKind::Load, 0.0, 0.0},
             {3, flg::BusKind::Load, 0.0, 0.0}};
  c.branches = {{1, 2, 0.1, 0.5, 0.0, 1.0, 0.0}};
  return c;
}

inline std::string data_file(const std::string& name) {
  return std::string(FLG_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline flg::GridCase load_ieee118() {
  return flg::parse_case(slurp(data_file("ieee118.case")));
}

// Deterministic helpers for seeded test loops.
struct TestRng {
  std::mt19937_64 rng;
  explicit TestRng(std::uint64_t seed) : rng(seed) {}
  double u01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  int int_in(int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::complex<double> unit_complex() {
    return {2.0 * u01() - 1.0, 2.0 * u01() - 1.0};
  }
};

// Union-find connectivity check over a case's branch list.
inline bool is_connected(const flg::GridCase& c) {
  std::vector<int> ids;
  ids.reserve(c.buses.size());
  for (const auto& b : c.buses) ids.push_back(b.id);
  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto index_of = [&](int id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw std::runtime_error("unknown id");
  };
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& br : c.branches)
    parent[find(index_of(br.from_bus))] = find(index_of(br.to_bus));
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < parent.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace testutil
