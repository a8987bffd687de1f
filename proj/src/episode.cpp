#include "jbpcic/episode.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "jbpcic/oracle.hpp"

namespace jbpcic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool all_at_least(const std::vector<double>& g, double threshold) {
  return std::all_of(g.begin(), g.end(), [&](double x) { return x >= threshold; });
}

double minimum(const std::vector<double>& g) { return *std::min_element(g.begin(), g.end()); }

EpisodeResult make_result(EngineKind kind, const Environment& env, int episode) {
  EpisodeResult res;
  res.engine = kind;
  res.bearer = env.bearer();
  res.antennas = env.antennas();
  res.seed = env.seed();
  res.episode = episode;
  return res;
}

}  // namespace

EpisodeResult run_episode(Environment& env, Agent& agent, int episode, int steps, const EpisodeTargets& targets) {
  const auto wall0 = Clock::now();
  EpisodeResult res = make_result(agent.kind(), env, episode);
  const NetworkConfig& cfg = env.config();
  env.begin_episode(episode);
  agent.begin_episode();

  bool on_target = steps > 0;
  StateVector s = env.observe();
  for (int t = 1; t <= steps; ++t) {
    StepRecord rec;
    rec.t = t;
    rec.state = s;

    auto t0 = Clock::now();
    rec.action = agent.act(s);
    res.engine_time_s += seconds_since(t0);
    if (rec.action) env.apply(decode_action(*rec.action, env.bearer()));

    rec.sinr_db = env.sinr_db();
    rec.sinr_eff_db = rec.sinr_db;
    for (double& g : rec.sinr_eff_db) g = effective_sinr(g, env.bearer(), env.code_map());
    rec.power_dbm = env.radio().power_dbm;
    rec.beam = env.radio().beam;

    const bool abort = minimum(rec.sinr_eff_db) < targets.gamma_min_db;
    if (abort) {
      rec.reward = cfg.r_min;
    } else if (rec.action) {
      rec.reward = reward(*rec.action, rec.sinr_db[kRoleB], rec.sinr_db[kRoleL], env.bearer());
    }
    on_target = on_target && all_at_least(rec.sinr_eff_db, targets.gamma_target_db);

    env.advance();
    const StateVector s_next = env.observe();
    rec.loss = std::numeric_limits<double>::quiet_NaN();
    if (rec.action) {
      t0 = Clock::now();
      rec.loss = agent.learn({s, rec.action->value, rec.reward, s_next, abort || t == steps});
      res.engine_time_s += seconds_since(t0);
    }
    res.steps.push_back(std::move(rec));
    s = s_next;

    if (!agent.healthy()) {
      res.aborted = true;
      res.diagnostic = "non-finite training loss at step " + std::to_string(t);
      break;
    }
    if (abort) {
      res.aborted = true;
      break;
    }
  }

  if (!res.aborted && !res.steps.empty() && all_at_least(res.steps.back().sinr_eff_db, targets.gamma_target_db)) {
    agent.add_terminal_bonus(cfg.r_max);
    res.steps.back().reward += cfg.r_max;
  }
  res.converged = !res.aborted && on_target;
  if (res.aborted) env.reset_bs_state();
  res.wall_time_s = seconds_since(wall0);
  return res;
}

EpisodeResult run_oracle_episode(Environment& env, int episode, int steps, const EpisodeTargets& targets,
                                 int workers) {
  const auto wall0 = Clock::now();
  EpisodeResult res = make_result(EngineKind::brute_force, env, episode);
  const NetworkConfig& cfg = env.config();
  env.begin_episode(episode);
  SearchSpace space{cfg.power_grid_dbm, &env.codebook(), static_cast<int>(env.layout().sites.size())};

  bool on_target = steps > 0;
  for (int t = 1; t <= steps; ++t) {
    StepRecord rec;
    rec.t = t;
    rec.state = env.observe();
    const auto t0 = Clock::now();
    const OracleResult best = brute_force(env.radio(), space, env.code_map(), targets.gamma_target_db, workers);
    res.engine_time_s += seconds_since(t0);
    env.radio().power_dbm = best.power_dbm;
    env.radio().beam = best.beam;

    rec.sinr_db = env.sinr_db();
    rec.sinr_eff_db = best.sinr_eff_db;
    rec.power_dbm = best.power_dbm;
    rec.beam = best.beam;
    if (env.bearer() == Bearer::data) rec.reward = rec.sinr_db[kRoleB] + rec.sinr_db[kRoleL];
    rec.loss = std::numeric_limits<double>::quiet_NaN();
    on_target = on_target && best.feasible;
    res.steps.push_back(std::move(rec));
    env.advance();
  }
  res.converged = on_target;
  res.wall_time_s = seconds_since(wall0);
  return res;
}

std::optional<double> episode_sum_rate(const EpisodeResult& r) {
  if (r.aborted || r.steps.empty()) return std::nullopt;
  std::vector<std::vector<double>> g;
  g.reserve(r.steps.size());
  for (const auto& s : r.steps) g.push_back(s.sinr_eff_db);
  return sum_rate(g);
}

}  // namespace jbpcic
