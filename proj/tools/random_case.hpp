#pragma once

#include <cstdint>

#include "flg/case_io.hpp"

namespace flg {

// Parameters for deterministic random network generation.
struct RandomCaseParams {
  std::uint64_t seed = 1;
  int n_buses = 10;    // total buses, 2..500
  int n_gens = 3;      // generator buses, 1..n_buses-1
  bool shunts = false; // emit bus shunts and line charging
};

// Builds a connected random network: a random spanning tree over buses
// 1..n_buses plus a random number of extra branches, with series
// impedances drawn from r in (0.01, 0.2) and x in (0.05, 1.0). Generator
// buses are a random subset of the requested size; every other bus is a
// load. All branches have unit tap and no phase shift. The result is a
// pure function of the parameter set, so equal seeds give byte-identical
// cases. Throws std::invalid_argument on out-of-range parameters.
GridCase gen_random(const RandomCaseParams& params);

}  // namespace flg
