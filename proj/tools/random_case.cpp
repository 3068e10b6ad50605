#include "random_case.hpp"

#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace flg {

GridCase gen_random(const RandomCaseParams& params) {
  if (params.n_buses < 2 || params.n_buses > 500)
    throw std::invalid_argument("gen_random: n_buses must be in [2, 500], got " +
                                std::to_string(params.n_buses));
  if (params.n_gens < 1 || params.n_gens >= params.n_buses)
    throw std::invalid_argument("gen_random: n_gens must be in [1, n_buses), got " +
                                std::to_string(params.n_gens));

  std::mt19937_64 rng(params.seed);
  // Hand-rolled draws keep the byte stream identical across standard
  // library implementations (std::uniform_*_distribution is not portable).
  auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(); };
  auto uniform_int = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  const int n = params.n_buses;

  // Generator subset via partial Fisher-Yates over the id list.
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 1);
  for (int i = 0; i < params.n_gens; ++i)
    std::swap(ids[static_cast<std::size_t>(i)],
              ids[static_cast<std::size_t>(uniform_int(i, n - 1))]);
  std::unordered_set<int> gens(ids.begin(), ids.begin() + params.n_gens);

  GridCase c;
  c.name = "rnd-s" + std::to_string(params.seed) + "-b" + std::to_string(n) +
           "-g" + std::to_string(params.n_gens);
  c.base_mva = 100.0;

  for (int id = 1; id <= n; ++id) {
    Bus bus;
    bus.id = id;
    bus.kind = gens.count(id) ? BusKind::Generator : BusKind::Load;
    if (params.shunts && uniform01() < 0.4) {
      bus.gs = uniform(0.0, 0.05);
      bus.bs = uniform(-0.25, 0.25);
    }
    c.buses.push_back(bus);
  }

  auto add_branch = [&](int from, int to) {
    Branch br;
    br.from_bus = from;
    br.to_bus = to;
    br.r = uniform(0.01, 0.2);
    br.x = uniform(0.05, 1.0);
    br.b = params.shunts ? uniform(0.0, 0.3) : 0.0;
    c.branches.push_back(br);
  };

  // Random spanning tree: attach each bus to an already-attached one.
  for (int v = 2; v <= n; ++v) add_branch(uniform_int(1, v - 1), v);

  const int extras = uniform_int(0, n);
  for (int e = 0; e < extras; ++e) {
    const int u = uniform_int(1, n);
    int v = uniform_int(1, n);
    while (v == u) v = uniform_int(1, n);
    add_branch(u, v);
  }

  return c;
}

}  // namespace flg
