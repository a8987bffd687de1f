#include "jbpcic/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "jbpcic/metrics.hpp"

namespace jbpcic {

long long RunResult::steps() const {
  long long n = 0;
  for (const auto& e : episodes) n += static_cast<long long>(e.steps.size());
  return n;
}

EpisodeTargets targets_for(const NetworkConfig& cfg, int antennas) {
  return {cfg.gamma_target_db(antennas), cfg.gamma_min_db};
}

RunResult run_engine(const NetworkConfig& cfg, EngineKind engine, int antennas, std::uint64_t seed,
                     int oracle_workers) {
  RunResult run;
  run.key = {engine, antennas, seed};
  run.bearer = cfg.bearer;
  Environment env(cfg, antennas, seed);
  const EpisodeTargets targets = targets_for(cfg, antennas);

  if (engine == EngineKind::brute_force) {
    for (int k = 1; k <= cfg.oracle_episodes; ++k)
      run.episodes.push_back(run_oracle_episode(env, k, cfg.frame_steps, targets, oracle_workers));
  } else {
    auto agent = make_agent(engine, cfg, seed);
    for (int k = 1; k <= cfg.episode_cap; ++k) {
      run.episodes.push_back(run_episode(env, *agent, k, cfg.frame_steps, targets));
      const EpisodeResult& e = run.episodes.back();
      if (!e.diagnostic.empty()) {
        run.diagnostic = e.diagnostic + " in episode " + std::to_string(k);
        break;
      }
      if (cfg.stop_on_convergence && e.converged) break;
    }
  }
  for (const auto& e : run.episodes) {
    run.wall_time_s += e.wall_time_s;
    run.engine_time_s += e.engine_time_s;
  }
  return run;
}

void classify_episode(EpisodeResult& e, const NetworkConfig& cfg) {
  const EpisodeTargets targets = targets_for(cfg, e.antennas);
  const auto n = static_cast<int>(e.steps.size());
  const auto below = [](const StepRecord& s, double x) {
    return std::any_of(s.sinr_eff_db.begin(), s.sinr_eff_db.end(), [&](double g) { return g < x; });
  };
  e.aborted = e.engine != EngineKind::brute_force &&
              (n < cfg.frame_steps || (n > 0 && below(e.steps.back(), targets.gamma_min_db)));
  bool on_target = n > 0;
  for (const auto& s : e.steps) on_target = on_target && !below(s, targets.gamma_target_db);
  e.converged = !e.aborted && n == cfg.frame_steps && on_target;
}

RunSummary summarize(const RunResult& run, const NetworkConfig& cfg) {
  RunSummary s;
  s.key = run.key;
  s.bearer = run.bearer;
  s.zeta = convergence_episode(run.episodes);
  s.max_sum_rate = sum_rate_summary(run.episodes);
  s.episodes = static_cast<int>(run.episodes.size());
  s.converged_episodes =
      static_cast<int>(std::count_if(run.episodes.begin(), run.episodes.end(), [](const auto& e) { return e.converged; }));
  s.steps = run.steps();
  if (s.zeta) {
    const auto tl = throughput_and_frame_loss(*s.zeta, cfg.frame_steps * cfg.step_s, cfg.payload_bits, cfg.voice_activity);
    s.throughput_bps = tl.throughput_bps;
    s.lost_frames = tl.lost_frames;
  }
  return s;
}

RunTiming timing_of(const RunResult& run) {
  return {run.key, run.bearer, run.steps(), run.wall_time_s, run.engine_time_s};
}

std::vector<AggregateRow> aggregate(const std::vector<RunSummary>& runs) {
  std::map<std::pair<int, int>, std::vector<double>> groups;
  for (const auto& r : runs)
    groups[{static_cast<int>(r.key.engine), r.key.antennas}].push_back(
        r.zeta ? static_cast<double>(*r.zeta) : std::numeric_limits<double>::infinity());
  std::vector<AggregateRow> out;
  for (const auto& [k, z] : groups) {
    AggregateRow row;
    row.engine = static_cast<EngineKind>(k.first);
    row.antennas = k.second;
    row.seeds = static_cast<int>(z.size());
    row.converged_seeds = static_cast<int>(std::count_if(z.begin(), z.end(), [](double x) { return std::isfinite(x); }));
    row.zeta_p50 = percentile(z, 50.0);
    row.zeta_p90 = percentile(z, 90.0);
    out.push_back(row);
  }
  return out;
}

ExperimentSummary run_experiment(const NetworkConfig& cfg, int workers,
                                 const std::function<void(const RunResult&)>& sink) {
  std::vector<RunKey> keys;
  for (EngineKind e : cfg.engines)
    for (int m : cfg.antennas)
      for (std::uint64_t seed : cfg.seeds) keys.push_back({e, m, seed});

  ExperimentSummary out;
  out.runs.resize(keys.size());
  out.timings.resize(keys.size());
  std::vector<char> failed(keys.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;

  const auto work = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      const RunResult run = run_engine(cfg, keys[i].engine, keys[i].antennas, keys[i].seed);
      out.runs[i] = summarize(run, cfg);
      out.timings[i] = timing_of(run);
      failed[i] = run.failed();
      if (sink) {
        std::lock_guard lock(sink_mutex);
        sink(run);
      }
    }
  };
  const int n = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(keys.size(), 1)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(work);
  }
  out.any_failed = std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; });
  out.aggregate = aggregate(out.runs);
  return out;
}

}  // namespace jbpcic
