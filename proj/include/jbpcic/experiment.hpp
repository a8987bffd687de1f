#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jbpcic/config.hpp"
#include "jbpcic/episode.hpp"

namespace jbpcic {

struct RunKey {
  EngineKind engine = EngineKind::fpa;
  int antennas = 1;
  std::uint64_t seed = 0;
  friend bool operator==(const RunKey&, const RunKey&) = default;
};

// Every episode of one (engine, M, seed) run plus its timings.
struct RunResult {
  RunKey key;
  Bearer bearer = Bearer::data;
  std::vector<EpisodeResult> episodes;
  double wall_time_s = 0.0;
  double engine_time_s = 0.0;
  std::string diagnostic;  // non-empty when training diverged

  bool failed() const { return !diagnostic.empty(); }
  long long steps() const;
};

// Trace-derived figures for one run. Everything here can be recomputed from
// the trace alone, so a summary rebuilt from disk matches the original.
struct RunSummary {
  RunKey key;
  Bearer bearer = Bearer::data;
  std::optional<int> zeta;
  std::optional<double> max_sum_rate;
  int episodes = 0;
  int converged_episodes = 0;
  long long steps = 0;
  std::optional<double> throughput_bps;
  std::optional<long long> lost_frames;
};

struct RunTiming {
  RunKey key;
  Bearer bearer = Bearer::data;
  long long steps = 0;
  double wall_time_s = 0.0;
  double engine_time_s = 0.0;
  double engine_time_per_step_s() const { return steps > 0 ? engine_time_s / static_cast<double>(steps) : 0.0; }
};

// Percentile of the convergence episode over seeds for one (engine, M);
// seeds that never converged count as infinitely late.
struct AggregateRow {
  EngineKind engine = EngineKind::fpa;
  int antennas = 1;
  int seeds = 0;
  int converged_seeds = 0;
  double zeta_p50 = 0.0;
  double zeta_p90 = 0.0;
};

struct ExperimentSummary {
  std::vector<RunSummary> runs;
  std::vector<RunTiming> timings;
  std::vector<AggregateRow> aggregate;
  bool any_failed = false;
};

EpisodeTargets targets_for(const NetworkConfig& cfg, int antennas);

// Episodes 1, 2, ... until the first converged one (when stopping on
// convergence), the episode cap, or a training failure. The brute-force
// engine sweeps `oracle_episodes` episodes instead. Cap exhaustion is not a
// failure.
RunResult run_engine(const NetworkConfig& cfg, EngineKind engine, int antennas, std::uint64_t seed,
                     int oracle_workers = 1);

// Rebuilds the converged/aborted flags from the recorded SINRs alone.
void classify_episode(EpisodeResult& e, const NetworkConfig& cfg);

RunSummary summarize(const RunResult& run, const NetworkConfig& cfg);
RunTiming timing_of(const RunResult& run);
std::vector<AggregateRow> aggregate(const std::vector<RunSummary>& runs);

// All (engine, M, seed) runs of the config, spread over `workers` threads.
// `sink` sees each finished run, one at a time, in completion order; the
// returned rows follow the engine x M x seed order of the config.
ExperimentSummary run_experiment(const NetworkConfig& cfg, int workers,
                                 const std::function<void(const RunResult&)>& sink = {});

}  // namespace jbpcic
