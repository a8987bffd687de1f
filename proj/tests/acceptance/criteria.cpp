#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "jbpcic/agent.hpp"
#include "jbpcic/environment.hpp"
#include "jbpcic/experiment.hpp"
#include "jbpcic/metrics.hpp"
#include "jbpcic/oracle.hpp"
#include "jbpcic/qnetwork.hpp"
#include "jbpcic/qtable.hpp"
#include "jbpcic/trace_io.hpp"

namespace fs = std::filesystem;

namespace jbpcic::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

// Runs f(i) for i in [0, n) over all hardware threads.
template <class F>
void parallel_for(int n, F&& f) {
  const int workers = std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) f(i);
    });
}

std::vector<std::uint64_t> seeds(int n) {
  std::vector<std::uint64_t> s;
  for (int i = 1; i <= n; ++i) s.push_back(static_cast<std::uint64_t>(i));
  return s;
}

std::complex<double> beam_entry(int n, int m, int antennas, double d_over_lambda) {
  const double theta = (n + 0.5) * std::numbers::pi / antennas;
  const double phase = 2.0 * std::numbers::pi * d_over_lambda * m * std::cos(theta);
  return std::polar(1.0 / std::sqrt(static_cast<double>(antennas)), phase);
}

double gain(const std::vector<std::complex<double>>& h, int beam, int antennas, double d_over_lambda) {
  std::complex<double> acc = 0.0;
  for (int m = 0; m < antennas; ++m) acc += h[static_cast<std::size_t>(m)] * beam_entry(beam, m, antennas, d_over_lambda);
  return std::norm(acc);
}

// ---------------------------------------------------------------------------
// Shared data-bearer DQN runs (criteria 3, 4 and 6).

constexpr int kDataSeeds = 10;
constexpr int kDataEpisodes = 2000;

NetworkConfig data_config() {
  NetworkConfig cfg = default_config(Bearer::data);
  cfg.episode_cap = kDataEpisodes;
  cfg.stop_on_convergence = false;
  return cfg;
}

struct DataDigest {
  std::optional<int> zeta;
  int best_episode = 0;  // converged episode with the largest sum rate
  double best_sum_rate = 0.0;
  std::vector<double> best_sinr_db;       // per UE per step of that episode
  std::vector<double> converged_sinr_db;  // per UE per step, every converged episode
  int converged = 0;
};

DataDigest digest(const RunResult& run) {
  DataDigest d;
  d.zeta = convergence_episode(run.episodes);
  for (const auto& e : run.episodes) {
    if (!e.converged) continue;
    ++d.converged;
    for (const auto& s : e.steps) d.converged_sinr_db.insert(d.converged_sinr_db.end(), s.sinr_db.begin(), s.sinr_db.end());
    const double sr = *episode_sum_rate(e);
    if (d.best_episode == 0 || sr > d.best_sum_rate) {
      d.best_episode = e.episode;
      d.best_sum_rate = sr;
      d.best_sinr_db.clear();
      for (const auto& s : e.steps) d.best_sinr_db.insert(d.best_sinr_db.end(), s.sinr_db.begin(), s.sinr_db.end());
    }
  }
  return d;
}

const std::vector<DataDigest>& data_runs(int antennas) {
  static std::mutex mu;
  static std::map<int, std::vector<DataDigest>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(antennas);
  if (it != cache.end()) return it->second;
  const NetworkConfig cfg = data_config();
  std::vector<DataDigest> out(kDataSeeds);
  parallel_for(kDataSeeds, [&](int i) {
    out[static_cast<std::size_t>(i)] = digest(run_engine(cfg, EngineKind::dqn, antennas, seeds(kDataSeeds)[i]));
  });
  return cache.emplace(antennas, std::move(out)).first->second;
}

}  // namespace

double independent_objective(const RadioState& state, const double power_dbm[2], const int beam[2], int antennas,
                             double d_over_lambda) {
  const double noise_mw = std::pow(10.0, state.noise_dbm / 10.0);
  double total = 0.0;
  for (int u = 0; u < 2; ++u) {
    const int serving = state.serving[static_cast<std::size_t>(u)];
    double signal = 0.0, interference = 0.0;
    for (int b = 0; b < 2; ++b) {
      const double rx = std::pow(10.0, power_dbm[b] / 10.0) *
                        gain(state.channel[static_cast<std::size_t>(u)][static_cast<std::size_t>(b)].h, beam[b],
                             antennas, d_over_lambda);
      (b == serving ? signal : interference) += rx;
    }
    total += 10.0 * std::log10(signal / (interference + noise_mw));
  }
  return total;
}

EnumeratedOptimum nested_loop_optimum(const RadioState& state, std::span<const double> grid, int antennas,
                                      double d_over_lambda) {
  EnumeratedOptimum best;
  best.objective = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (double p0 : grid)
    for (int n0 = 0; n0 < antennas; ++n0)
      for (double p1 : grid)
        for (int n1 = 0; n1 < antennas; ++n1) {
          const double p[2] = {p0, p1};
          const int n[2] = {n0, n1};
          const double obj = independent_objective(state, p, n, antennas, d_over_lambda);
          ++best.candidates;
          if (first || obj > best.objective) {
            best = {{p0, p1}, {n0, n1}, obj, best.candidates};
            first = false;
          }
        }
  return best;
}

CriterionResult oracle_equivalence() {
  const auto t0 = Clock::now();
  CriterionResult r{1, "oracle equivalence (L=2, M in {2,4}, |P|=2, 100 draws each)"};
  NetworkConfig cfg = default_config(Bearer::data);
  const std::vector<double> grid = {44.0, 46.0};
  int mismatches = 0, draws = 0;
  std::string first_bad;
  for (int m : {2, 4}) {
    Environment env(cfg, m, 7);
    SearchSpace space{grid, &env.codebook(), 2};
    for (int k = 1; k <= 100; ++k) {
      env.begin_episode(k);
      const OracleResult lib = brute_force(env.radio(), space, env.code_map(), cfg.gamma_target_db(m));
      const EnumeratedOptimum ref = nested_loop_optimum(env.radio(), grid, m, cfg.d_over_lambda);
      // Tie-break aware: the library must pick the earliest candidate whose
      // independently computed objective ties the independent maximum.
      std::optional<EnumeratedOptimum> earliest;
      for (double p0 : grid)
        for (int n0 = 0; n0 < m; ++n0)
          for (double p1 : grid)
            for (int n1 = 0; n1 < m; ++n1) {
              const double p[2] = {p0, p1};
              const int n[2] = {n0, n1};
              const double obj = independent_objective(env.radio(), p, n, m, cfg.d_over_lambda);
              if (!earliest && obj >= ref.objective - 1e-9 * std::max(1.0, std::abs(ref.objective)))
                earliest = EnumeratedOptimum{{p0, p1}, {n0, n1}, obj, 0};
            }
      const bool same = lib.power_dbm[0] == earliest->power_dbm[0] && lib.power_dbm[1] == earliest->power_dbm[1] &&
                        lib.beam[0] == earliest->beam[0] && lib.beam[1] == earliest->beam[1] &&
                        std::abs(lib.objective - ref.objective) <= 1e-9 * std::max(1.0, std::abs(ref.objective)) &&
                        lib.evaluated == static_cast<std::uint64_t>(ref.candidates);
      ++draws;
      if (!same) {
        ++mismatches;
        if (first_bad.empty()) first_bad = " first mismatch M=" + std::to_string(m) + " draw " + std::to_string(k);
      }
    }
  }
  r.seconds = since(t0);
  r.passed = mismatches == 0 && r.seconds < 10.0;
  r.detail = std::to_string(draws - mismatches) + "/" + std::to_string(draws) + " argmax matches, " +
             fmt(r.seconds, 3) + " s (limit 10 s)" + first_bad;
  return r;
}

CriterionResult runtime_ratio() {
  const auto t0 = Clock::now();
  CriterionResult r{2, "run-time ratio DQN/brute force <= 10% at M=4, shrinking at M=16"};
  const auto ratio_at = [](int m, double& agent_step, double& oracle_step) {
    NetworkConfig cfg = default_config(Bearer::data);
    cfg.stop_on_convergence = false;
    cfg.episode_cap = 200;
    cfg.oracle_episodes = 50;
    double agent_time = 0.0, oracle_time = 0.0;
    long long agent_steps = 0, oracle_steps = 0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const RunResult dqn = run_engine(cfg, EngineKind::dqn, m, seed);
      const RunResult bf = run_engine(cfg, EngineKind::brute_force, m, seed, 1);
      agent_time += dqn.engine_time_s;
      agent_steps += dqn.steps();
      oracle_time += bf.engine_time_s;
      oracle_steps += bf.steps();
    }
    agent_step = agent_time / static_cast<double>(agent_steps);
    oracle_step = oracle_time / static_cast<double>(oracle_steps);
    return agent_step / oracle_step;
  };
  double a4 = 0, o4 = 0, a16 = 0, o16 = 0;
  const double r4 = ratio_at(4, a4, o4);
  const double r16 = ratio_at(16, a16, o16);
  r.seconds = since(t0);
  r.passed = r4 <= 0.10 && r16 < r4 && r.seconds < 300.0;
  r.detail = "M=4: " + fmt(a4 * 1e6, 3) + " us/step agent vs " + fmt(o4 * 1e6, 3) + " us/step sweep, ratio " +
             fmt(100 * r4, 3) + "%; M=16: " + fmt(a16 * 1e6, 3) + " vs " + fmt(o16 * 1e6, 3) + " us, ratio " +
             fmt(100 * r16, 3) + "%";
  return r;
}

CriterionResult near_optimal_sinr() {
  const auto t0 = Clock::now();
  CriterionResult r{3, "near-optimal SINR (M in {4,8}, >= 7/10 seeds on target and >= 85% of oracle sum rate)"};
  const NetworkConfig cfg = data_config();
  bool ok = true;
  for (int m : {4, 8}) {
    const auto& runs = data_runs(m);
    int good = 0, on_target = 0;
    double worst_fraction = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kDataSeeds; ++i) {
      const DataDigest& d = runs[static_cast<std::size_t>(i)];
      if (d.best_episode == 0) continue;
      ++on_target;
      Environment env(cfg, m, seeds(kDataSeeds)[i]);
      const EpisodeResult opt = run_oracle_episode(env, d.best_episode, cfg.frame_steps, targets_for(cfg, m));
      const double fraction = d.best_sum_rate / *episode_sum_rate(opt);
      worst_fraction = std::min(worst_fraction, fraction);
      if (fraction >= 0.85) ++good;
    }
    ok = ok && good >= 7;
    r.detail += "M=" + std::to_string(m) + ": " + std::to_string(on_target) + "/10 seeds converged, " +
                std::to_string(good) + "/10 also >= 85% of oracle sum rate";
    if (on_target > 0) r.detail += " (worst " + fmt(100 * worst_fraction, 3) + "%)";
    r.detail += "; ";
  }
  r.seconds = since(t0);
  r.passed = ok && r.seconds < 1800.0;
  r.detail += fmt(r.seconds, 3) + " s";
  return r;
}

CriterionResult beamforming_gain_trend() {
  const auto t0 = Clock::now();
  CriterionResult r{4, "beamforming gain: median converged SINR(M=16) - SINR(M=4) = 6 +- 2 dB"};
  std::optional<double> med[2];
  int idx = 0;
  for (int m : {4, 16}) {
    std::vector<double> pooled;
    for (const auto& d : data_runs(m)) pooled.insert(pooled.end(), d.converged_sinr_db.begin(), d.converged_sinr_db.end());
    if (!pooled.empty()) med[idx] = median(pooled);
    r.detail += "M=" + std::to_string(m) + " median " + (med[idx] ? fmt(*med[idx]) + " dB" : "undefined (no converged episode)") +
                " over " + std::to_string(pooled.size()) + " samples; ";
    ++idx;
  }
  r.seconds = since(t0);
  if (med[0] && med[1]) {
    const double diff = *med[1] - *med[0];
    r.passed = std::abs(diff - 6.0) <= 2.0;
    r.detail += "difference " + fmt(diff) + " dB";
  } else {
    r.detail += "difference undefined";
  }
  return r;
}

CriterionResult voice_engine_ordering() {
  const auto t0 = Clock::now();
  CriterionResult r{5, "voice ordering at the 10th percentile: FPA <= tabular <= DQN, DQN - FPA >= 1 dB (20 seeds)"};
  NetworkConfig cfg = default_config(Bearer::voice);
  cfg.stop_on_convergence = false;
  cfg.episode_cap = 500;
  constexpr int kSeeds = 20;
  constexpr int kTail = 50;  // final episodes pooled per seed
  const EngineKind engines[3] = {EngineKind::fpa, EngineKind::tabular, EngineKind::dqn};
  std::vector<std::vector<double>> pooled(3);
  std::vector<std::vector<double>> per_run(3 * kSeeds);
  parallel_for(3 * kSeeds, [&](int i) {
    const RunResult run = run_engine(cfg, engines[i / kSeeds], 1, static_cast<std::uint64_t>(i % kSeeds + 1));
    const int n = static_cast<int>(run.episodes.size());
    for (int k = std::max(0, n - kTail); k < n; ++k)
      for (const auto& s : run.episodes[static_cast<std::size_t>(k)].steps)
        per_run[static_cast<std::size_t>(i)].insert(per_run[static_cast<std::size_t>(i)].end(), s.sinr_eff_db.begin(),
                                                    s.sinr_eff_db.end());
  });
  double p10[3];
  for (int e = 0; e < 3; ++e) {
    for (int s = 0; s < kSeeds; ++s) {
      const auto& v = per_run[static_cast<std::size_t>(e * kSeeds + s)];
      pooled[static_cast<std::size_t>(e)].insert(pooled[static_cast<std::size_t>(e)].end(), v.begin(), v.end());
    }
    p10[e] = percentile(pooled[static_cast<std::size_t>(e)], 10.0);
  }
  r.seconds = since(t0);
  r.passed = p10[0] <= p10[1] && p10[1] <= p10[2] && p10[2] - p10[0] >= 1.0 && r.seconds < 900.0;
  r.detail = "p10 gamma_eff: FPA " + fmt(p10[0]) + " dB, tabular " + fmt(p10[1]) + " dB, DQN " + fmt(p10[2]) +
             " dB; " + fmt(r.seconds, 3) + " s";
  return r;
}

CriterionResult convergence_trend() {
  const auto t0 = Clock::now();
  CriterionResult r{6, "convergence trend: median zeta(M=32) >= median zeta(M=8) over 10 seeds"};
  double med[2];
  int conv[2];
  int idx = 0;
  for (int m : {8, 32}) {
    std::vector<double> z;
    conv[idx] = 0;
    for (const auto& d : data_runs(m)) {
      z.push_back(d.zeta ? static_cast<double>(*d.zeta) : std::numeric_limits<double>::infinity());
      conv[idx] += d.zeta.has_value();
    }
    med[idx] = median(z);
    r.detail += "M=" + std::to_string(m) + ": median zeta " + format_number(med[idx]) + " (" +
                std::to_string(conv[idx]) + "/10 converged within " + std::to_string(kDataEpisodes) + "); ";
    ++idx;
  }
  // A comparison of two never-converging medians would pass vacuously, so
  // the M = 8 median has to be finite.
  r.passed = std::isfinite(med[0]) && med[1] >= med[0];
  r.seconds = since(t0);
  return r;
}

CriterionResult property_suite(std::ostream& log) {
  const auto t0 = Clock::now();
  CriterionResult r{7, "numerical property suite"};
  int failed = 0;
  const auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    log << "  " << (ok ? "ok  " : "FAIL") << " " << name << ": " << detail << "\n";
    failed += !ok;
  };
  Rng rng = make_rng(2024, Stream::agent, 99);

  {
    double worst = 0.0;
    for (int m : {1, 2, 4, 8, 16, 32, 64})
      for (int i = 0; i < 1000; ++i) {
        const auto a = steering_vector(uniform01(rng) * std::numbers::pi, m, 0.5);
        double n2 = 0.0;
        for (const auto& x : a.entries) n2 += std::norm(x);
        worst = std::max(worst, std::abs(std::sqrt(n2) - 1.0));
      }
    report("steering vector unit norm", worst <= 1e-12, "max deviation " + fmt(worst));
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      QNetwork net({8, 24, 24, 16});
      net.randomize(rng);
      std::vector<double> p = net.parameters();
      for (double& x : p) x += 0.3 * standard_normal(rng);
      net.set_parameters(p);
      const int n = 6;
      Eigen::MatrixXd s(8, n);
      std::vector<int> a(n);
      std::vector<double> y(n);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < 8; ++i) s(i, j) = 2.0 * uniform01(rng) - 1.0;
        a[static_cast<std::size_t>(j)] = static_cast<int>(uniform01(rng) * 16);
        y[static_cast<std::size_t>(j)] = 4.0 * standard_normal(rng);
      }
      std::vector<QNetwork::Layer> grad;
      net.loss_and_gradient(s, a, y, grad);
      std::vector<double> analytic;
      for (const auto& l : grad) {
        analytic.insert(analytic.end(), l.w.data(), l.w.data() + l.w.size());
        analytic.insert(analytic.end(), l.b.data(), l.b.data() + l.b.size());
      }
      std::vector<QNetwork::Layer> scratch;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double h = 1e-5 * std::max(1.0, std::abs(p[k]));
        std::vector<double> q = p;
        q[k] = p[k] + h;
        net.set_parameters(q);
        const double up = net.loss_and_gradient(s, a, y, scratch);
        q[k] = p[k] - h;
        net.set_parameters(q);
        const double down = net.loss_and_gradient(s, a, y, scratch);
        const double numeric = (up - down) / (2.0 * h);
        const double denom = std::max({std::abs(numeric), std::abs(analytic[k]), 1e-6});
        worst = std::max(worst, std::abs(numeric - analytic[k]) / denom);
      }
      net.set_parameters(p);
    }
    report("backprop vs central differences", worst < 1e-4, "max relative error " + fmt(worst));
  }

  {
    // 3 states x 2 actions, deterministic transitions.
    const int next[3][2] = {{1, 2}, {0, 2}, {2, 0}};
    const double rew[3][2] = {{1.0, 0.0}, {0.5, 2.0}, {0.0, -1.0}};
    const double g = 0.9;
    double v[3] = {0, 0, 0};
    for (int it = 0; it < 2000; ++it) {
      double nv[3];
      for (int s = 0; s < 3; ++s) nv[s] = std::max(rew[s][0] + g * v[next[s][0]], rew[s][1] + g * v[next[s][1]]);
      std::copy(nv, nv + 3, v);
    }
    QTable q(3, 2);
    for (int k = 0; k < 20000; ++k) {
      const double alpha = 1.0 / (1.0 + k / 2000.0);
      for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) tabular_update(q, s, a, rew[s][a], next[s][a], alpha, g);
    }
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
      for (int a = 0; a < 2; ++a) worst = std::max(worst, std::abs(q(s, a) - (rew[s][a] + g * v[next[s][a]])));
    report("tabular toy MDP vs value iteration", worst < 1e-3, "max error " + fmt(worst));
  }

  {
    const NetworkConfig cfg = default_config(Bearer::data);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const int m = 1 << (1 + i % 5);
      Environment env(cfg, m, static_cast<std::uint64_t>(1000 + i));
      RadioState st = env.radio();
      for (auto& p : st.power_dbm) p = 10.0 + 36.0 * uniform01(rng);
      for (auto& b : st.beam) b = static_cast<int>(uniform01(rng) * m);
      const double base = sinr_db(st, env.codebook(), 0);
      RadioState up = st;
      up.power_dbm[0] += 1.0;  // serving BS of UE 0
      RadioState intf = st;
      intf.power_dbm[1] += 1.0;
      if (!(sinr_db(up, env.codebook(), 0) >= base)) ++violations;
      if (!(sinr_db(intf, env.codebook(), 0) <= base)) ++violations;
    }
    report("SINR monotone in serving and interfering power", violations == 0,
           std::to_string(violations) + " violations over 1000 states");
  }

  {
    int bad = 0;
    for (Bearer q : {Bearer::voice, Bearer::data})
      for (int a = 0; a < 16; ++a)
        if (!(encode_action(decode_action(ActionRegister(a), q), q) == ActionRegister(a))) ++bad;
    report("action register round trip", bad == 0, std::to_string(32 - bad) + "/32 pairs");
  }

  {
    const double cmds[4] = {-3, -1, 1, 3};
    int bad = 0;
    for (int seq = 0; seq < 100000; ++seq) {
      double p = 46.0 * uniform01(rng);
      for (int k = 0; k < 20; ++k) {
        p = apply_power_cmd(p, cmds[static_cast<int>(uniform01(rng) * 4)], 46.0, 0.0);
        if (p > 46.0 || p < 0.0) ++bad;
      }
    }
    report("power clamp", bad == 0, std::to_string(bad) + " violations over 1e5 sequences");
  }

  {
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(1 + static_cast<int>(uniform01(rng) * 500));
      for (double& v : x) v = 10.0 * standard_normal(rng);
      const auto c = ccdf(x, 0.25);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].probability < 0.0 || c[i].probability > 1.0) ++bad;
        if (i > 0 && c[i].probability > c[i - 1].probability) ++bad;
      }
    }
    report("CCDF monotone and bounded", bad == 0, std::to_string(bad) + " violations");
  }

  {
    const double r1 = reward(ActionRegister(0b0011), 0.0, 0.0, Bearer::voice);
    const double r2 = reward(ActionRegister(0b1010), 0.0, 0.0, Bearer::voice);
    report("voice reward spot values", r1 == 6.0 && r2 == 0.0, "r(11/00) = " + fmt(r1) + ", r(01/01) = " + fmt(r2));
  }

  r.seconds = since(t0);
  r.passed = failed == 0;
  r.detail = failed == 0 ? "all properties hold" : std::to_string(failed) + " properties violated";
  return r;
}

CriterionResult determinism(const fs::path& cli, const fs::path& scratch) {
  const auto t0 = Clock::now();
  CriterionResult r{8, "determinism: repeated `run` gives byte-identical traces"};
  fs::remove_all(scratch);
  int compared = 0, differing = 0;
  bool launched = true;
  struct Case {
    std::string name, args;
  };
  const Case cases[2] = {
      {"voice", "--set bearer=voice --engines fpa,tabular,dqn --seeds 3,4 --set episode_cap=40 --set stop_on_convergence=false"},
      {"data", "--engines dqn,brute_force --M 4 --seeds 5 --set episode_cap=40 --set stop_on_convergence=false --set oracle_episodes=3"}};
  for (const auto& c : cases) {
    for (const char* rep : {"a", "b"}) {
      const fs::path dir = scratch / c.name / rep;
      const std::string cmd = "\"" + cli.string() + "\" run " + c.args + " --out \"" + dir.string() + "\" > \"" +
                              (scratch / (c.name + rep + ".log")).string() + "\" 2>&1";
      fs::create_directories(scratch);
      launched = launched && std::system(cmd.c_str()) == 0;
    }
    const fs::path a = scratch / c.name / "a";
    if (!fs::exists(a)) continue;
    for (const auto& entry : fs::directory_iterator(a)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("trace_", 0) != 0) continue;
      ++compared;
      const fs::path b = scratch / c.name / "b" / name;
      if (!fs::exists(b) || read_file(entry.path()) != read_file(b)) ++differing;
    }
  }
  r.seconds = since(t0);
  r.passed = launched && compared > 0 && differing == 0;
  r.detail = std::to_string(compared) + " trace files compared, " + std::to_string(differing) + " differ" +
             (launched ? "" : ", a run exited with an error");
  return r;
}

}  // namespace jbpcic::acceptance
