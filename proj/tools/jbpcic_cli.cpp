// Command-line front end: run experiments, sweep the oracle, verify golden
// traces and rebuild metrics from traces on disk.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jbpcic/config.hpp"
#include "jbpcic/experiment.hpp"
#include "jbpcic/metrics.hpp"
#include "jbpcic/trace_io.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace jbpcic;

namespace {

enum Exit { kOk = 0, kConfigError = 1, kRunFailure = 2, kVerifyFailure = 3 };

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::string engines;
  std::string antennas;
  int workers = 0;
  std::vector<std::string> overrides;
};

std::string default_out_dir() {
  const char* env = std::getenv("JBPCIC_OUT");
  return env && *env ? env : "out";
}

void add_common(CLI::App* cmd, CommonOptions& o, bool run_filters) {
  cmd->add_option("-c,--config", o.config_path, "Config file (key = value lines)");
  cmd->add_option("-o,--out", o.out_dir, "Output directory (default: $JBPCIC_OUT or ./out)");
  cmd->add_option("--set", o.overrides, "Override one config key, as key=value");
  if (!run_filters) return;
  cmd->add_option("--seeds", o.seeds, "Comma-separated seed list");
  cmd->add_option("--M", o.antennas, "Comma-separated antenna counts");
  cmd->add_option("--workers", o.workers, "Parallel workers")->check(CLI::PositiveNumber);
}

std::string key_of(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return "";
  auto k = line.substr(0, eq);
  k.erase(0, k.find_first_not_of(" \t"));
  k.erase(k.find_last_not_of(" \t") + 1);
  return k;
}

// Config text with each overridden key's original line dropped and the override appended.
NetworkConfig build_config(const CommonOptions& o, const std::string& engines_override) {
  std::map<std::string, std::string> set;
  for (const auto& kv : o.overrides) {
    const std::string k = key_of(kv);
    if (k.empty()) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set[k] = kv.substr(kv.find('=') + 1);
  }
  if (!o.seeds.empty()) set["seeds"] = o.seeds;
  if (!o.antennas.empty()) set["antennas"] = o.antennas;
  if (!engines_override.empty()) set["engines"] = engines_override;
  if (o.workers > 0) set["workers"] = std::to_string(o.workers);

  std::string base;
  if (!o.config_path.empty()) {
    try {
      base = read_file(o.config_path);
    } catch (const CsvError& e) {
      throw ConfigError(e.what());
    }
  }
  std::ostringstream text;
  std::istringstream in(base);
  std::string line;
  while (std::getline(in, line)) {
    const std::string body = line.substr(0, line.find('#'));
    if (!set.count(key_of(body))) text << line << "\n";
  }
  for (const auto& [k, v] : set) text << k << " = " << v << "\n";
  return parse_config(text.str());
}

fs::path out_dir(const CommonOptions& o) { return o.out_dir.empty() ? default_out_dir() : o.out_dir; }

// Reads existing rows written under the same config so separate invocations
// (for example `oracle` then `run`) accumulate into one table.
template <class Row, class File, class Reader>
std::vector<Row> existing_rows(const fs::path& p, const std::string& hash, Reader read, std::vector<Row> File::*rows) {
  if (!fs::exists(p)) return {};
  try {
    std::istringstream in(read_file(p));
    File f = read(in);
    if (f.config_hash == hash) return f.*rows;
  } catch (const CsvError&) {
  }
  return {};
}

template <class Row>
void merge(std::vector<Row>& rows, const std::vector<Row>& fresh) {
  for (const auto& r : fresh) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& x) { return x.key == r.key; });
    if (it != rows.end())
      *it = r;
    else
      rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tuple(static_cast<int>(a.key.engine), a.key.antennas, a.key.seed) <
           std::tuple(static_cast<int>(b.key.engine), b.key.antennas, b.key.seed);
  });
}

template <class T>
void add_missing(std::vector<T>& into, const std::vector<T>& from) {
  for (const auto& x : from)
    if (std::find(into.begin(), into.end(), x) == into.end()) into.push_back(x);
}

// The config recorded in the output directory: this invocation's, widened to
// cover the engines, seeds and antennas of a compatible earlier invocation.
NetworkConfig recorded_config(const fs::path& dir, const NetworkConfig& cfg) {
  NetworkConfig out = cfg;
  if (!fs::exists(dir / "config.txt")) return out;
  try {
    const NetworkConfig prev = load_config(dir / "config.txt");
    if (config_hash(prev) != config_hash(cfg)) return out;
    out.engines = prev.engines;
    add_missing(out.engines, cfg.engines);
    out.seeds = prev.seeds;
    add_missing(out.seeds, cfg.seeds);
    out.antennas = prev.antennas;
    add_missing(out.antennas, cfg.antennas);
  } catch (const ConfigError&) {
  }
  return out;
}

void write_tables(const fs::path& dir, const NetworkConfig& cfg, const ExperimentSummary& summary) {
  const std::string hash = config_hash(cfg);
  write_file(dir / "config.txt", serialize(recorded_config(dir, cfg)));

  auto runs = existing_rows(dir / "summary.csv", hash, read_summary, &SummaryFile::runs);
  merge(runs, summary.runs);
  std::ostringstream s;
  write_summary(s, {hash, runs});
  write_file(dir / "summary.csv", s.str());

  std::ostringstream a;
  write_aggregate(a, hash, aggregate(runs));
  write_file(dir / "aggregate.csv", a.str());

  auto timings = existing_rows(dir / "timing.csv", hash, read_timing, &TimingFile::rows);
  merge(timings, summary.timings);
  std::ostringstream t;
  write_timing(t, {hash, timings});
  write_file(dir / "timing.csv", t.str());

  if (const auto ratios = runtime_ratios(timings); !ratios.empty()) {
    std::ostringstream r;
    write_runtime_ratio(r, hash, ratios);
    write_file(dir / "runtime_ratio.csv", r.str());
    for (const auto& x : ratios)
      std::cout << "runtime ratio M=" << x.antennas << " seed=" << x.seed << ": " << format_number(x.ratio()) << "\n";
  }
}

int do_run(const CommonOptions& o, const std::string& engines, bool oracle_only) {
  NetworkConfig cfg;
  try {
    cfg = build_config(o, oracle_only ? std::string("brute_force") : engines);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  const fs::path dir = out_dir(o);
  try {
    ExperimentSummary summary;
    if (oracle_only) {
      // The sweep itself is parallel; runs go one after another.
      for (int m : cfg.antennas)
        for (auto seed : cfg.seeds) {
          const RunResult run = run_engine(cfg, EngineKind::brute_force, m, seed, cfg.workers);
          std::ostringstream tr;
          write_trace(tr, run, cfg);
          write_file(dir / trace_file_name(run.key), tr.str());
          summary.runs.push_back(summarize(run, cfg));
          summary.timings.push_back(timing_of(run));
        }
    } else {
      std::vector<std::string> failures;
      summary = run_experiment(cfg, cfg.workers, [&](const RunResult& run) {
        std::ostringstream tr;
        write_trace(tr, run, cfg);
        write_file(dir / trace_file_name(run.key), tr.str());
        if (run.failed()) failures.push_back(trace_file_name(run.key) + ": " + run.diagnostic);
      });
      for (const auto& f : failures) std::cerr << "run failed: " << f << "\n";
    }
    write_tables(dir, cfg, summary);
    for (const auto& r : summary.runs)
      std::cout << to_string(r.key.engine) << " M=" << r.key.antennas << " seed=" << r.key.seed
                << " zeta=" << (r.zeta ? std::to_string(*r.zeta) : "none") << " episodes=" << r.episodes << "\n";
    return summary.any_failed ? kRunFailure : kOk;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kRunFailure;
  }
}

std::vector<TraceFile> load_traces(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TraceFile> out;
  for (const auto& f : files) {
    std::istringstream in(read_file(f));
    out.push_back(read_trace(in));
  }
  return out;
}

NetworkConfig config_in(const fs::path& dir, const CommonOptions& o) {
  if (!o.config_path.empty()) return build_config(o, "");
  return load_config(dir / "config.txt");
}

int do_report(const CommonOptions& o) {
  const fs::path dir = out_dir(o);
  try {
    const NetworkConfig cfg = config_in(dir, o);
    std::vector<RunSummary> runs;
    for (auto& tf : load_traces(dir)) {
      RunResult run;
      run.key = tf.key;
      run.bearer = tf.bearer;
      run.episodes = std::move(tf.episodes);
      for (auto& e : run.episodes) classify_episode(e, cfg);
      runs.push_back(summarize(run, cfg));
    }
    merge(runs, {});
    std::ostringstream s;
    write_summary(s, {config_hash(cfg), runs});
    write_file(dir / "report_summary.csv", s.str());
    std::ostringstream a;
    write_aggregate(a, config_hash(cfg), aggregate(runs));
    write_file(dir / "report_aggregate.csv", a.str());
    for (const auto& r : aggregate(runs))
      std::cout << to_string(r.engine) << " M=" << r.antennas << " seeds=" << r.seeds
                << " converged=" << r.converged_seeds << " zeta_p50=" << format_number(r.zeta_p50) << "\n";
    if (fs::exists(dir / "summary.csv")) {
      const bool same = read_file(dir / "summary.csv") == s.str();
      std::cout << "summary.csv " << (same ? "matches" : "DIFFERS FROM") << " the traces\n";
      if (!same) return kVerifyFailure;
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "report failed: " << e.what() << "\n";
    return kRunFailure;
  }
}

int do_ccdf(const CommonOptions& o, int tail, double step) {
  const fs::path dir = out_dir(o);
  try {
    const NetworkConfig cfg = config_in(dir, o);
    std::map<std::pair<std::string, int>, std::vector<double>> pooled;
    for (const auto& tf : load_traces(dir)) {
      const int n = static_cast<int>(tf.episodes.size());
      for (int i = std::max(0, n - tail); i < n; ++i)
        for (const auto& s : tf.episodes[static_cast<std::size_t>(i)].steps)
          for (double g : s.sinr_eff_db) pooled[{std::string(to_string(tf.key.engine)), tf.key.antennas}].push_back(g);
    }
    for (const auto& [k, samples] : pooled) {
      std::ostringstream out;
      write_ccdf(out, config_hash(cfg), ccdf(samples, step));
      const std::string name = "ccdf_" + k.first + "_M" + std::to_string(k.second) + ".csv";
      write_file(dir / name, out.str());
      std::cout << name << ": " << samples.size() << " samples, p10=" << format_number(percentile(samples, 10.0))
                << " dB\n";
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "ccdf failed: " << e.what() << "\n";
    return kRunFailure;
  }
}

int do_verify(const std::string& golden) {
  try {
    const bool ok = verify_golden(golden, std::cout) && verify_properties(std::cout);
    std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
    return ok ? kOk : kVerifyFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "verify failed: " << e.what() << "\n";
    return kVerifyFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint beamforming and power control simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_engines;
  auto* run = app.add_subcommand("run", "Run the engine x M x seed matrix and write traces and summaries");
  add_common(run, run_opts, true);
  run->add_option("--engines", run_engines, "Comma-separated engines: fpa, tabular, dqn, brute_force");

  CommonOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Brute-force sweep only");
  add_common(oracle, oracle_opts, true);

  std::string golden = JBPCIC_GOLDEN_DIR;
  auto* verify = app.add_subcommand("verify", "Regenerate golden traces and run the property checks");
  verify->add_option("--golden", golden, "Directory holding config.txt, traces and summary.csv");

  CommonOptions ccdf_opts;
  int tail = 1;
  double step = 0.1;
  auto* ccdf_cmd = app.add_subcommand("ccdf", "Pool effective SINRs from traces into CCDF tables");
  add_common(ccdf_cmd, ccdf_opts, false);
  ccdf_cmd->add_option("--tail", tail, "Final episodes per trace to pool")->check(CLI::PositiveNumber);
  ccdf_cmd->add_option("--step", step, "Threshold grid step in dB")->check(CLI::PositiveNumber);

  CommonOptions report_opts;
  auto* report = app.add_subcommand("report", "Recompute summaries from traces and compare");
  add_common(report, report_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (*run) return do_run(run_opts, run_engines, false);
  if (*oracle) return do_run(oracle_opts, "", true);
  if (*verify) return do_verify(golden);
  if (*ccdf_cmd) return do_ccdf(ccdf_opts, tail, step);
  if (*report) return do_report(report_opts);
  return kConfigError;
}
