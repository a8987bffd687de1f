#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jbpcic/agent.hpp"
#include "jbpcic/environment.hpp"

namespace jbpcic {

struct StepRecord {
  int t = 0;  // 1-based
  StateVector state{};
  std::optional<ActionRegister> action;  // empty when the engine issued no command
  double reward = 0.0;
  std::vector<double> sinr_db;      // per UE
  std::vector<double> sinr_eff_db;  // per UE
  std::vector<double> power_dbm;    // per BS, after the step's command
  std::vector<int> beam;            // per BS, after the step's command
  double loss = 0.0;                // NaN when no gradient step ran
};

struct EpisodeResult {
  EngineKind engine = EngineKind::fpa;
  Bearer bearer = Bearer::data;
  int antennas = 1;
  std::uint64_t seed = 0;
  int episode = 0;
  std::vector<StepRecord> steps;
  bool converged = false;
  bool aborted = false;
  std::string diagnostic;  // set when training diverged
  double wall_time_s = 0.0;
  double engine_time_s = 0.0;  // decisions + training, or the exhaustive sweep
};

struct EpisodeTargets {
  double gamma_target_db = 0.0;
  double gamma_min_db = -3.0;
};

// One pass of the learning loop: observe, decay epsilon and choose, apply the
// command to both BSs, score, abort with r_min below gamma_min, store and
// train, then move the UEs. A clean finish with every UE on target earns
// r_max on the last transition. An aborted episode returns the network to
// its initial powers and beams.
EpisodeResult run_episode(Environment& env, Agent& agent, int episode, int steps, const EpisodeTargets& targets);

// Same trace schema, but every step is the exhaustive joint optimum against
// the frozen channels of that step. Never aborts.
EpisodeResult run_oracle_episode(Environment& env, int episode, int steps, const EpisodeTargets& targets,
                                 int workers = 1);

// Sum rate of a completed episode; nullopt for an aborted or empty one.
std::optional<double> episode_sum_rate(const EpisodeResult& r);

}  // namespace jbpcic
