#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jbpcic {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Band { sub6, mmwave };

// Bearer selector q: 0 = voice on sub-6, 1 = beamformed data on mmWave.
enum class Bearer : int { voice = 0, data = 1 };

inline int bearer_bit(Bearer b) { return static_cast<int>(b); }

enum class CodebookAlignment { centered, edge };

enum class EngineKind { fpa, tabular, dqn, brute_force };

std::string_view to_string(EngineKind e);
EngineKind engine_from_string(std::string_view s);
std::string_view to_string(Bearer b);

struct CodeRateLevel {
  double min_sinr_db;
  double rate;
};

// Every experiment parameter. Bearer-dependent defaults are filled in by
// default_config() and load_config(); a config is validated before use.
struct NetworkConfig {
  Bearer bearer = Bearer::data;

  // Layout and UEs.
  int num_bs = 2;
  double cell_radius_m = 150.0;
  double intersite_distance_m = 225.0;
  int max_ue_per_bs = 10;
  int ue_per_bs = 1;
  double speed_kmh = 2.0;
  double step_s = 1e-3;
  int frame_steps = 10;

  // Radio.
  double max_power_dbm = 46.0;
  double power_floor_dbm = 0.0;
  bool power_floor_enabled = true;
  double carrier_mhz = 28000.0;
  double bs_antenna_gain_dbi = 3.0;
  double ue_antenna_gain_dbi = 0.0;
  int n_paths = 4;
  double p_los = 0.8;
  std::vector<int> antennas = {4};
  double d_over_lambda = 0.5;
  CodebookAlignment alignment = CodebookAlignment::centered;

  // Path loss.
  double ci_exponent_los = 2.0;
  double ci_exponent_nlos = 3.0;
  double ci_shadow_los_db = 4.0;
  double ci_shadow_nlos_db = 8.0;
  double hata_bs_height_m = 30.0;
  double hata_ue_height_m = 1.5;
  double hata_shadow_db = 8.0;

  // Noise.
  double thermal_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double bandwidth_hz = 100e6;

  // Power allocation.
  int n_prb_total = 100;
  int n_prb_ue = 100;
  std::vector<double> power_grid_dbm = {40.0, 42.0, 44.0, 46.0};

  // Voice coding.
  std::vector<CodeRateLevel> code_rates = {{-std::numeric_limits<double>::infinity(), 1.0 / 3.0}, {0.0, 0.5}, {5.0, 1.0}};
  double codec_rate_bps = 23850.0;
  double voice_activity = 0.8;
  double payload_bits = 1e5;

  // SINR thresholds (dB).
  double gamma_target_voice_db = 3.0;
  double gamma0_bf_db = 5.0;
  double gamma_min_db = -3.0;

  // Learning.
  double discount = 0.995;
  double epsilon_initial = 1.0;
  double epsilon_decay = 0.9995;
  double epsilon_min = 0.10;
  bool epsilon_reset_per_episode = false;
  int n_states = 8;
  int n_actions = 16;
  int hidden_width = 24;
  int hidden_depth = 2;
  int minibatch = 32;
  double learning_rate = 0.01;
  int replay_capacity = 10000;
  double r_min = -10.0;
  double r_max = 10.0;
  double tabular_alpha = 0.1;
  int tabular_bins = 4;

  // Experiment.
  int episode_cap = 2000;
  bool stop_on_convergence = true;
  int oracle_episodes = 1;  // episodes swept by the standalone oracle engine
  std::vector<EngineKind> engines = {EngineKind::dqn};
  std::vector<std::uint64_t> seeds = {1};
  int workers = 1;

  // Target SINR for array size m: 3 dB for voice, gamma0 + 10 log10(m) for data.
  double gamma_target_db(int m) const;
  double noise_power_dbm() const;
  Band band() const { return bearer == Bearer::voice ? Band::sub6 : Band::mmwave; }
};

NetworkConfig default_config(Bearer bearer);

// Throws ConfigError naming the offending field.
void validate(const NetworkConfig& cfg);

// Parses `key = value` lines ('#' starts a comment). Unknown keys and
// invariant violations throw ConfigError. `bearer` is applied first so the
// remaining keys override the bearer's defaults.
NetworkConfig parse_config(std::string_view text);
NetworkConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(serialize(c)) reproduces c.
std::string serialize(const NetworkConfig& cfg);

// FNV-1a over the canonical text, rendered as 16 hex digits. The run
// selection (engines, seeds, antennas, workers) is left out: a trace depends
// only on the hashed keys and its own (engine, M, seed).
std::string config_hash(const NetworkConfig& cfg);

}  // namespace jbpcic
