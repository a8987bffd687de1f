#include "jbpcic/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "jbpcic/environment.hpp"
#include "jbpcic/metrics.hpp"

namespace jbpcic {

namespace {

constexpr const char* kTraceColumns =
    "t,engine,q,M,seed,episode,action_hex,P_l,P_b,n_l,n_b,gamma_l,gamma_b,gammaeff_l,gammaeff_b,reward,loss";
constexpr const char* kSummaryColumns =
    "engine,q,M,seed,zeta,max_sum_rate,episodes,converged_episodes,steps,throughput_bps,lost_frames,ccdf_source";
constexpr const char* kTimingColumns = "engine,q,M,seed,steps,wall_time_s,engine_time_s,engine_time_per_step_s";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

long long parse_integer(const std::string& s) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw CsvError("not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw CsvError("not an unsigned integer: '" + s + "'");
  return v;
}

Bearer parse_bearer(const std::string& s) {
  if (s == "0") return Bearer::voice;
  if (s == "1") return Bearer::data;
  throw CsvError("bearer must be 0 or 1, got '" + s + "'");
}

EngineKind parse_engine(const std::string& s) {
  try {
    return engine_from_string(s);
  } catch (const std::exception&) {
    throw CsvError("unknown engine '" + s + "'");
  }
}

std::string hash_line(const std::string& hash) { return "# config_hash=" + hash + "\n"; }

// Consumes leading comment lines, returning the config hash, then checks the column header.
std::string read_preamble(std::istream& in, const char* columns, std::vector<std::string>* comments = nullptr) {
  std::string hash;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      const auto pos = line.find("config_hash=");
      if (pos != std::string::npos && hash.empty()) hash = line.substr(pos + 12, 16);
      if (comments) comments->push_back(line);
      continue;
    }
    if (line != columns) throw CsvError("unexpected column header: " + line);
    return hash;
  }
  throw CsvError("missing column header");
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>)
    return format_number(*v);
  else
    return std::to_string(*v);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, p);
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw CsvError("not a number: '" + s + "'");
  return v;
}

std::string trace_file_name(const RunKey& key) {
  return "trace_" + std::string(to_string(key.engine)) + "_M" + std::to_string(key.antennas) + "_s" +
         std::to_string(key.seed) + ".csv";
}

void write_trace(std::ostream& out, const RunResult& run, const NetworkConfig& cfg) {
  const Environment env(cfg, run.key.antennas, run.key.seed);
  out << hash_line(config_hash(cfg));
  out << "# engine=" << to_string(run.key.engine) << " q=" << bearer_bit(run.bearer) << " M=" << run.key.antennas
      << " seed=" << run.key.seed << "\n";
  out << "# sites=";
  for (std::size_t i = 0; i < env.layout().sites.size(); ++i) {
    const Vec2 p = env.layout().sites[i].position;
    out << (i ? ";" : "") << format_number(p.x) << " " << format_number(p.y);
  }
  out << " drop=";
  for (std::size_t i = 0; i < env.drop().size(); ++i)
    out << (i ? ";" : "") << format_number(env.drop()[i].x) << " " << format_number(env.drop()[i].y);
  out << "\n" << kTraceColumns << "\n";

  const std::string engine(to_string(run.key.engine));
  const std::string prefix_q = std::to_string(bearer_bit(run.bearer));
  for (const auto& e : run.episodes) {
    for (const auto& s : e.steps) {
      out << s.t << ',' << engine << ',' << prefix_q << ',' << run.key.antennas << ',' << run.key.seed << ','
          << e.episode << ',' << (s.action ? s.action->hex() : "-") << ',' << format_number(s.power_dbm[kRoleL]) << ','
          << format_number(s.power_dbm[kRoleB]) << ',' << s.beam[kRoleL] << ',' << s.beam[kRoleB] << ','
          << format_number(s.sinr_db[kRoleL]) << ',' << format_number(s.sinr_db[kRoleB]) << ','
          << format_number(s.sinr_eff_db[kRoleL]) << ',' << format_number(s.sinr_eff_db[kRoleB]) << ','
          << format_number(s.reward) << ',' << format_number(s.loss) << '\n';
    }
  }
}

TraceFile read_trace(std::istream& in) {
  TraceFile tf;
  std::vector<std::string> comments;
  tf.config_hash = read_preamble(in, kTraceColumns, &comments);
  bool keyed = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 17) throw CsvError("trace row " + std::to_string(line_no) + ": expected 17 columns");
    const RunKey key{parse_engine(c[1]), static_cast<int>(parse_integer(c[3])), parse_u64(c[4])};
    const Bearer bearer = parse_bearer(c[2]);
    if (!keyed) {
      tf.key = key;
      tf.bearer = bearer;
      keyed = true;
    } else if (!(key == tf.key) || bearer != tf.bearer) {
      throw CsvError("trace row " + std::to_string(line_no) + ": mixed runs in one trace");
    }
    const int episode = static_cast<int>(parse_integer(c[5]));
    if (tf.episodes.empty() || tf.episodes.back().episode != episode) {
      EpisodeResult e;
      e.engine = key.engine;
      e.bearer = bearer;
      e.antennas = key.antennas;
      e.seed = key.seed;
      e.episode = episode;
      tf.episodes.push_back(std::move(e));
    }
    StepRecord s;
    s.t = static_cast<int>(parse_integer(c[0]));
    if (c[6] != "-") s.action = ActionRegister(static_cast<int>(std::stoi(c[6], nullptr, 16)));
    s.power_dbm = {parse_number(c[7]), parse_number(c[8])};
    s.beam = {static_cast<int>(parse_integer(c[9])), static_cast<int>(parse_integer(c[10]))};
    s.sinr_db = {parse_number(c[11]), parse_number(c[12])};
    s.sinr_eff_db = {parse_number(c[13]), parse_number(c[14])};
    s.reward = parse_number(c[15]);
    s.loss = parse_number(c[16]);
    tf.episodes.back().steps.push_back(std::move(s));
  }
  if (!keyed) {
    // An empty run still names itself in the header.
    for (const auto& cm : comments) {
      if (cm.rfind("# engine=", 0) != 0) continue;
      std::istringstream ss(cm.substr(2));
      std::string tok;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "engine") tf.key.engine = parse_engine(v);
        if (k == "q") tf.bearer = parse_bearer(v);
        if (k == "M") tf.key.antennas = static_cast<int>(parse_integer(v));
        if (k == "seed") tf.key.seed = parse_u64(v);
      }
    }
  }
  return tf;
}

void write_summary(std::ostream& out, const SummaryFile& s) {
  out << hash_line(s.config_hash) << kSummaryColumns << "\n";
  for (const auto& r : s.runs) {
    out << to_string(r.key.engine) << ',' << bearer_bit(r.bearer) << ',' << r.key.antennas << ',' << r.key.seed << ','
        << opt(r.zeta) << ',' << opt(r.max_sum_rate) << ',' << r.episodes << ',' << r.converged_episodes << ','
        << r.steps << ',' << opt(r.throughput_bps) << ',' << opt(r.lost_frames) << ',' << trace_file_name(r.key)
        << '\n';
  }
}

SummaryFile read_summary(std::istream& in) {
  SummaryFile s;
  s.config_hash = read_preamble(in, kSummaryColumns);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 12) throw CsvError("summary row: expected 12 columns");
    RunSummary r;
    r.key = {parse_engine(c[0]), static_cast<int>(parse_integer(c[2])), parse_u64(c[3])};
    r.bearer = parse_bearer(c[1]);
    if (!c[4].empty()) r.zeta = static_cast<int>(parse_integer(c[4]));
    if (!c[5].empty()) r.max_sum_rate = parse_number(c[5]);
    r.episodes = static_cast<int>(parse_integer(c[6]));
    r.converged_episodes = static_cast<int>(parse_integer(c[7]));
    r.steps = parse_integer(c[8]);
    if (!c[9].empty()) r.throughput_bps = parse_number(c[9]);
    if (!c[10].empty()) r.lost_frames = parse_integer(c[10]);
    s.runs.push_back(r);
  }
  return s;
}

void write_timing(std::ostream& out, const TimingFile& t) {
  out << hash_line(t.config_hash) << kTimingColumns << "\n";
  for (const auto& r : t.rows) {
    out << to_string(r.key.engine) << ',' << bearer_bit(r.bearer) << ',' << r.key.antennas << ',' << r.key.seed << ','
        << r.steps << ',' << format_number(r.wall_time_s) << ',' << format_number(r.engine_time_s) << ','
        << format_number(r.engine_time_per_step_s()) << '\n';
  }
}

TimingFile read_timing(std::istream& in) {
  TimingFile t;
  t.config_hash = read_preamble(in, kTimingColumns);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 8) throw CsvError("timing row: expected 8 columns");
    RunTiming r;
    r.key = {parse_engine(c[0]), static_cast<int>(parse_integer(c[2])), parse_u64(c[3])};
    r.bearer = parse_bearer(c[1]);
    r.steps = parse_integer(c[4]);
    r.wall_time_s = parse_number(c[5]);
    r.engine_time_s = parse_number(c[6]);
    t.rows.push_back(r);
  }
  return t;
}

void write_aggregate(std::ostream& out, const std::string& config_hash, const std::vector<AggregateRow>& rows) {
  out << hash_line(config_hash) << "engine,M,seeds,converged_seeds,zeta_p50,zeta_p90\n";
  for (const auto& r : rows)
    out << to_string(r.engine) << ',' << r.antennas << ',' << r.seeds << ',' << r.converged_seeds << ','
        << format_number(r.zeta_p50) << ',' << format_number(r.zeta_p90) << '\n';
}

std::vector<RuntimeRatio> runtime_ratios(const std::vector<RunTiming>& rows) {
  std::map<std::pair<int, std::uint64_t>, RuntimeRatio> m;
  std::map<std::pair<int, std::uint64_t>, int> seen;
  for (const auto& r : rows) {
    if (r.key.engine != EngineKind::dqn && r.key.engine != EngineKind::brute_force) continue;
    if (r.steps == 0) continue;
    auto& rr = m[{r.key.antennas, r.key.seed}];
    rr.antennas = r.key.antennas;
    rr.seed = r.key.seed;
    if (r.key.engine == EngineKind::dqn)
      rr.dqn_step_s = r.engine_time_per_step_s();
    else
      rr.oracle_step_s = r.engine_time_per_step_s();
    seen[{r.key.antennas, r.key.seed}] |= r.key.engine == EngineKind::dqn ? 1 : 2;
  }
  std::vector<RuntimeRatio> out;
  for (const auto& [k, v] : m)
    if (seen[k] == 3 && v.oracle_step_s > 0.0) out.push_back(v);
  return out;
}

void write_runtime_ratio(std::ostream& out, const std::string& config_hash, const std::vector<RuntimeRatio>& rows) {
  out << hash_line(config_hash) << "M,seed,dqn_step_s,oracle_step_s,ratio\n";
  for (const auto& r : rows)
    out << r.antennas << ',' << r.seed << ',' << format_number(r.dqn_step_s) << ',' << format_number(r.oracle_step_s)
        << ',' << format_number(r.ratio()) << '\n';
}

void write_ccdf(std::ostream& out, const std::string& config_hash, const std::vector<CcdfPoint>& points) {
  out << hash_line(config_hash) << "threshold_db,probability\n";
  for (const auto& p : points) out << format_number(p.threshold_db) << ',' << format_number(p.probability) << '\n';
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CsvError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw CsvError("cannot write " + p.string());
  out << content;
  if (!out) throw CsvError("write failed for " + p.string());
}

}  // namespace jbpcic
