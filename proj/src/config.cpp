#include "jbpcic/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace jbpcic {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  if (v == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::string fmt_double(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f(xs[i]);
  }
  return out;
}

using Setter = std::function<void(NetworkConfig&, const std::string& key, const std::string& value)>;
using Getter = std::function<std::string(const NetworkConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

// Table rows binding a config key to its member.
#define JB_FIELD(name, parse, print)                                                        \
  {                                                                                         \
    #name, Field {                                                                          \
      [](NetworkConfig& c, const std::string& k, const std::string& v) { c.name = parse; }, \
          [](const NetworkConfig& c) { return print; }                                      \
    }                                                                                       \
  }
#define JB_DOUBLE(name) JB_FIELD(name, parse_double(k, v), fmt_double(c.name))
#define JB_INT(name) JB_FIELD(name, static_cast<int>(parse_int(k, v)), std::to_string(c.name))
#define JB_BOOL(name) JB_FIELD(name, parse_bool(k, v), std::string(c.name ? "true" : "false"))

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      JB_INT(num_bs),
      JB_DOUBLE(cell_radius_m),
      JB_DOUBLE(intersite_distance_m),
      JB_INT(max_ue_per_bs),
      JB_INT(ue_per_bs),
      JB_DOUBLE(speed_kmh),
      JB_DOUBLE(step_s),
      JB_INT(frame_steps),
      JB_DOUBLE(max_power_dbm),
      JB_DOUBLE(power_floor_dbm),
      JB_BOOL(power_floor_enabled),
      JB_DOUBLE(carrier_mhz),
      JB_DOUBLE(bs_antenna_gain_dbi),
      JB_DOUBLE(ue_antenna_gain_dbi),
      JB_INT(n_paths),
      JB_DOUBLE(p_los),
      JB_DOUBLE(d_over_lambda),
      JB_DOUBLE(ci_exponent_los),
      JB_DOUBLE(ci_exponent_nlos),
      JB_DOUBLE(ci_shadow_los_db),
      JB_DOUBLE(ci_shadow_nlos_db),
      JB_DOUBLE(hata_bs_height_m),
      JB_DOUBLE(hata_ue_height_m),
      JB_DOUBLE(hata_shadow_db),
      JB_DOUBLE(thermal_dbm_hz),
      JB_DOUBLE(noise_figure_db),
      JB_DOUBLE(bandwidth_hz),
      JB_INT(n_prb_total),
      JB_INT(n_prb_ue),
      JB_DOUBLE(codec_rate_bps),
      JB_DOUBLE(voice_activity),
      JB_DOUBLE(payload_bits),
      JB_DOUBLE(gamma_target_voice_db),
      JB_DOUBLE(gamma0_bf_db),
      JB_DOUBLE(gamma_min_db),
      JB_DOUBLE(discount),
      JB_DOUBLE(epsilon_initial),
      JB_DOUBLE(epsilon_decay),
      JB_DOUBLE(epsilon_min),
      JB_BOOL(epsilon_reset_per_episode),
      JB_INT(n_states),
      JB_INT(n_actions),
      JB_INT(hidden_width),
      JB_INT(hidden_depth),
      JB_INT(minibatch),
      JB_DOUBLE(learning_rate),
      JB_INT(replay_capacity),
      JB_DOUBLE(r_min),
      JB_DOUBLE(r_max),
      JB_DOUBLE(tabular_alpha),
      JB_INT(tabular_bins),
      JB_INT(episode_cap),
      JB_BOOL(stop_on_convergence),
      JB_INT(oracle_episodes),
      JB_INT(workers),
      {"antennas",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          c.antennas.clear();
          for (const auto& item : split(v, ',')) c.antennas.push_back(static_cast<int>(parse_int(k, item)));
        },
        [](const NetworkConfig& c) {
          return join(c.antennas, [](int m) { return std::to_string(m); });
        }}},
      {"power_grid_dbm",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          c.power_grid_dbm.clear();
          for (const auto& item : split(v, ',')) c.power_grid_dbm.push_back(parse_double(k, item));
        },
        [](const NetworkConfig& c) { return join(c.power_grid_dbm, fmt_double); }}},
      {"code_rates",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          c.code_rates.clear();
          for (const auto& item : split(v, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2)
              throw ConfigError("config key '" + k + "': expected threshold:rate pairs");
            c.code_rates.push_back({parse_double(k, parts[0]), parse_double(k, parts[1])});
          }
        },
        [](const NetworkConfig& c) {
          return join(c.code_rates, [](const CodeRateLevel& l) {
            return fmt_double(l.min_sinr_db) + ":" + fmt_double(l.rate);
          });
        }}},
      {"engines",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          c.engines.clear();
          for (const auto& item : split(v, ',')) {
            try {
              c.engines.push_back(engine_from_string(item));
            } catch (const std::invalid_argument&) {
              throw ConfigError("config key '" + k + "': unknown engine '" + item + "'");
            }
          }
        },
        [](const NetworkConfig& c) {
          return join(c.engines, [](EngineKind e) { return std::string(to_string(e)); });
        }}},
      {"seeds",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          c.seeds.clear();
          for (const auto& item : split(v, ',')) {
            const auto s = parse_int(k, item);
            if (s < 0) throw ConfigError("config key '" + k + "': seeds must be non-negative");
            c.seeds.push_back(static_cast<std::uint64_t>(s));
          }
        },
        [](const NetworkConfig& c) {
          return join(c.seeds, [](std::uint64_t s) { return std::to_string(s); });
        }}},
      {"alignment",
       {[](NetworkConfig& c, const std::string& k, const std::string& v) {
          if (v == "centered")
            c.alignment = CodebookAlignment::centered;
          else if (v == "edge")
            c.alignment = CodebookAlignment::edge;
          else
            throw ConfigError("config key '" + k + "': expected centered or edge");
        },
        [](const NetworkConfig& c) {
          return std::string(c.alignment == CodebookAlignment::centered ? "centered" : "edge");
        }}},
  };
  return table;
}

#undef JB_DOUBLE
#undef JB_INT
#undef JB_BOOL
#undef JB_FIELD

}  // namespace

std::string_view to_string(EngineKind e) {
  switch (e) {
    case EngineKind::fpa: return "fpa";
    case EngineKind::tabular: return "tabular";
    case EngineKind::dqn: return "dqn";
    case EngineKind::brute_force: return "brute_force";
  }
  return "unknown";
}

EngineKind engine_from_string(std::string_view s) {
  if (s == "fpa") return EngineKind::fpa;
  if (s == "tabular") return EngineKind::tabular;
  if (s == "dqn") return EngineKind::dqn;
  if (s == "brute_force" || s == "oracle") return EngineKind::brute_force;
  throw std::invalid_argument("unknown engine: " + std::string(s));
}

std::string_view to_string(Bearer b) { return b == Bearer::voice ? "voice" : "data"; }

double NetworkConfig::gamma_target_db(int m) const {
  if (bearer == Bearer::voice) return gamma_target_voice_db;
  return gamma0_bf_db + 10.0 * std::log10(static_cast<double>(m));
}

double NetworkConfig::noise_power_dbm() const {
  return thermal_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

NetworkConfig default_config(Bearer bearer) {
  NetworkConfig c;
  c.bearer = bearer;
  if (bearer == Bearer::voice) {
    c.cell_radius_m = 350.0;
    c.intersite_distance_m = 525.0;
    c.speed_kmh = 5.0;
    c.frame_steps = 20;
    c.carrier_mhz = 2100.0;
    c.bs_antenna_gain_dbi = 11.0;
    c.n_paths = 15;
    c.p_los = 0.9;
    c.antennas = {1};
    c.bandwidth_hz = 180e3;
    c.n_prb_ue = 1;
    c.epsilon_min = 0.15;
    c.engines = {EngineKind::fpa, EngineKind::tabular, EngineKind::dqn};
  }
  return c;
}

void validate(const NetworkConfig& c) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (c.num_bs < 2) fail("num_bs", "at least two base stations are required");
  if (!(c.cell_radius_m > 0.0)) fail("cell_radius_m", "must be positive");
  if (std::abs(c.intersite_distance_m - 1.5 * c.cell_radius_m) > 1e-9 * c.cell_radius_m)
    fail("intersite_distance_m", "must equal 1.5 * cell_radius_m");
  if (c.ue_per_bs < 1 || c.ue_per_bs > c.max_ue_per_bs)
    fail("ue_per_bs", "must lie in [1, max_ue_per_bs]");
  if (c.speed_kmh < 0.0) fail("speed_kmh", "must be non-negative");
  if (!(c.step_s > 0.0)) fail("step_s", "must be positive");
  if (c.frame_steps < 0) fail("frame_steps", "must be non-negative");
  if (c.power_floor_enabled && c.power_floor_dbm > c.max_power_dbm)
    fail("power_floor_dbm", "must not exceed max_power_dbm");
  if (c.n_paths < 1) fail("n_paths", "must be at least 1");
  if (c.p_los < 0.0 || c.p_los > 1.0) fail("p_los", "must lie in [0, 1]");
  if (c.antennas.empty()) fail("antennas", "must list at least one array size");
  static const std::set<int> allowed = {1, 4, 8, 16, 32, 64};
  for (int m : c.antennas) {
    if (!allowed.count(m)) fail("antennas", "unsupported array size " + std::to_string(m));
    if (c.bearer == Bearer::voice && m != 1) fail("antennas", "voice bearers use a single antenna");
    if (c.bearer == Bearer::data && m == 1) fail("antennas", "data bearers need M in {4,8,16,32,64}");
  }
  if (!(c.d_over_lambda > 0.0)) fail("d_over_lambda", "must be positive");
  if (!(c.bandwidth_hz > 0.0)) fail("bandwidth_hz", "must be positive");
  if (c.n_prb_total < 1) fail("n_prb_total", "must be positive");
  if (c.n_prb_ue < 1 || c.n_prb_ue > c.n_prb_total) fail("n_prb_ue", "must lie in [1, n_prb_total]");
  if (c.power_grid_dbm.empty()) fail("power_grid_dbm", "must not be empty");
  for (double p : c.power_grid_dbm)
    if (p > c.max_power_dbm) fail("power_grid_dbm", "levels must not exceed max_power_dbm");
  if (c.code_rates.empty()) fail("code_rates", "must not be empty");
  for (std::size_t i = 0; i < c.code_rates.size(); ++i) {
    const auto& l = c.code_rates[i];
    if (l.rate < 1.0 / 3.0 - 1e-12 || l.rate > 1.0) fail("code_rates", "rates must lie in [1/3, 1]");
    if (i > 0 && !(l.min_sinr_db > c.code_rates[i - 1].min_sinr_db))
      fail("code_rates", "thresholds must be increasing");
    if (i > 0 && l.rate < c.code_rates[i - 1].rate) fail("code_rates", "rates must be non-decreasing");
  }
  if (c.voice_activity < 0.0 || c.voice_activity > 1.0) fail("voice_activity", "must lie in [0, 1]");
  if (!(c.discount >= 0.0 && c.discount < 1.0)) fail("discount", "must lie in [0, 1)");
  if (!(c.epsilon_initial > 0.0 && c.epsilon_initial <= 1.0)) fail("epsilon_initial", "must lie in (0, 1]");
  if (!(c.epsilon_decay > 0.0 && c.epsilon_decay <= 1.0)) fail("epsilon_decay", "must lie in (0, 1]");
  if (!(c.epsilon_min >= 0.0 && c.epsilon_min <= c.epsilon_initial))
    fail("epsilon_min", "must lie in [0, epsilon_initial]");
  if (c.n_states != 8) fail("n_states", "the state vector has exactly 8 entries");
  if (c.n_actions != 16) fail("n_actions", "the 4-bit action register has exactly 16 actions");
  if (c.hidden_depth != 2) fail("hidden_depth", "the network has exactly two hidden layers");
  if (c.minibatch < 1) fail("minibatch", "must be positive");
  const double width = std::sqrt(static_cast<double>((c.n_actions + 2) * c.minibatch));
  if (std::abs(width - c.hidden_width) > 1e-9)
    fail("hidden_width", "must equal sqrt((n_actions + 2) * minibatch)");
  if (!(c.learning_rate >= 0.0)) fail("learning_rate", "must be non-negative");
  if (c.replay_capacity < c.minibatch) fail("replay_capacity", "must hold at least one minibatch");
  if (!(c.tabular_alpha > 0.0)) fail("tabular_alpha", "must be positive");
  if (c.tabular_bins < 1) fail("tabular_bins", "must be positive");
  if (c.episode_cap < 1) fail("episode_cap", "must be positive");
  if (c.oracle_episodes < 1) fail("oracle_episodes", "must be positive");
  if (c.engines.empty()) fail("engines", "must list at least one engine");
  if (c.seeds.empty()) fail("seeds", "must list at least one seed");
  if (c.workers < 1) fail("workers", "must be positive");
}

NetworkConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(std::string_view(body).substr(0, eq));
    auto value = trim(std::string_view(body).substr(eq + 1));
    if (key != "bearer" && !fields().count(key)) throw ConfigError("config key '" + key + "': unknown key");
    if (!seen.insert(key).second) throw ConfigError("config key '" + key + "': duplicate key");
    entries.emplace_back(std::move(key), std::move(value));
  }

  Bearer bearer = Bearer::data;
  for (const auto& [k, v] : entries) {
    if (k != "bearer") continue;
    if (v == "voice" || v == "0")
      bearer = Bearer::voice;
    else if (v == "data" || v == "1")
      bearer = Bearer::data;
    else
      throw ConfigError("config key 'bearer': expected voice or data");
  }

  NetworkConfig cfg = default_config(bearer);
  // Intersite distance follows the radius unless given explicitly.
  bool isd_given = false;
  for (const auto& [k, v] : entries) {
    if (k == "bearer") continue;
    fields().at(k).set(cfg, k, v);
    isd_given = isd_given || k == "intersite_distance_m";
  }
  if (!isd_given) cfg.intersite_distance_m = 1.5 * cfg.cell_radius_m;
  validate(cfg);
  return cfg;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const NetworkConfig& cfg) {
  std::string out = "bearer = " + std::string(to_string(cfg.bearer)) + "\n";
  for (const auto& [key, field] : fields()) out += key + " = " + field.get(cfg) + "\n";
  return out;
}

std::string config_hash(const NetworkConfig& cfg) {
  NetworkConfig model = cfg;
  const NetworkConfig defaults;
  model.engines = defaults.engines;
  model.seeds = defaults.seeds;
  model.antennas = defaults.antennas;
  model.workers = defaults.workers;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize(model)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace jbpcic
