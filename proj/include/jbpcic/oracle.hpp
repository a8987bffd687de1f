#pragma once

#include <cstdint>
#include <vector>

#include "jbpcic/channel.hpp"
#include "jbpcic/radio.hpp"

namespace jbpcic {

// Joint search space: every BS picks one power level and one codebook beam.
struct SearchSpace {
  std::vector<double> power_grid_dbm;
  const BeamCodebook* codebook = nullptr;
  int num_bs = 2;

  // (|P| * M)^L
  std::uint64_t size() const;
};

struct OracleResult {
  std::vector<double> power_dbm;
  std::vector<int> beam;
  std::vector<double> sinr_eff_db;
  double objective = 0.0;  // sum of effective SINRs in dB
  bool feasible = false;   // every UE at or above the target
  std::uint64_t evaluated = 0;
};

// Exhaustive maximization of sum_j gamma_eff_j over the joint space with the
// channels in `state` frozen. Ties resolve to the lexicographically smallest
// assignment (BS 0 first; within a BS, power index before beam index). The
// candidate range is split across `workers` threads and reduced in index
// order, so the answer does not depend on the worker count. Throws
// std::invalid_argument on an empty grid.
OracleResult brute_force(const RadioState& state, const SearchSpace& space, const CodeRateMap& code_map,
                         double gamma_target_db, int workers = 1);

}  // namespace jbpcic
