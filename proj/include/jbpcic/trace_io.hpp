#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jbpcic/experiment.hpp"
#include "jbpcic/metrics.hpp"

namespace jbpcic {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest text that reads back to the same double (17 significant digits);
// "nan", "inf" and "-inf" for the non-finite values.
std::string format_number(double x);
double parse_number(const std::string& s);

std::string trace_file_name(const RunKey& key);

// Per-step trace of a run. Header comment lines carry the config hash, the
// run key and the site and drop coordinates; wall-clock figures are left out
// so identical runs give identical files.
void write_trace(std::ostream& out, const RunResult& run, const NetworkConfig& cfg);

struct TraceFile {
  std::string config_hash;
  RunKey key;
  Bearer bearer = Bearer::data;
  std::vector<EpisodeResult> episodes;  // steps carry SINRs, powers, beams, actions, rewards, losses
};

// Throws CsvError on malformed input.
TraceFile read_trace(std::istream& in);

struct SummaryFile {
  std::string config_hash;
  std::vector<RunSummary> runs;
};

void write_summary(std::ostream& out, const SummaryFile& s);
SummaryFile read_summary(std::istream& in);

struct TimingFile {
  std::string config_hash;
  std::vector<RunTiming> rows;
};

void write_timing(std::ostream& out, const TimingFile& t);
TimingFile read_timing(std::istream& in);

void write_aggregate(std::ostream& out, const std::string& config_hash, const std::vector<AggregateRow>& rows);

// One row per (M, seed) timed for both the DQN and the brute-force engines:
// per-step agent time over per-step sweep time.
struct RuntimeRatio {
  int antennas = 0;
  std::uint64_t seed = 0;
  double dqn_step_s = 0.0;
  double oracle_step_s = 0.0;
  double ratio() const { return dqn_step_s / oracle_step_s; }
};
std::vector<RuntimeRatio> runtime_ratios(const std::vector<RunTiming>& rows);
void write_runtime_ratio(std::ostream& out, const std::string& config_hash, const std::vector<RuntimeRatio>& rows);

void write_ccdf(std::ostream& out, const std::string& config_hash, const std::vector<CcdfPoint>& points);

// Reads a whole file or writes one, creating parent directories. Both throw
// CsvError when the file cannot be opened.
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace jbpcic
