#include "verify.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "criteria.hpp"
#include "jbpcic/experiment.hpp"
#include "jbpcic/trace_io.hpp"

namespace fs = std::filesystem;

namespace jbpcic {

namespace {

bool verify_one(const fs::path& dir, std::ostream& log) {
  log << "golden set " << dir.filename().string() << "\n";
  const NetworkConfig cfg = load_config(dir / "config.txt");
  const SummaryFile stored = [&] {
    std::istringstream in(read_file(dir / "summary.csv"));
    return read_summary(in);
  }();
  bool ok = stored.config_hash == config_hash(cfg);
  log << (ok ? "PASS" : "FAIL") << " golden config hash " << config_hash(cfg) << "\n";

  std::vector<RunSummary> runs;
  for (const auto& row : stored.runs) {
    const RunResult run = run_engine(cfg, row.key.engine, row.key.antennas, row.key.seed);
    std::ostringstream trace;
    write_trace(trace, run, cfg);
    const bool same = trace.str() == read_file(dir / trace_file_name(row.key));
    log << (same ? "PASS" : "FAIL") << " golden trace " << trace_file_name(row.key) << "\n";
    ok = ok && same;
    runs.push_back(summarize(run, cfg));
  }
  std::ostringstream summary;
  write_summary(summary, {config_hash(cfg), runs});
  const bool same = summary.str() == read_file(dir / "summary.csv");
  log << (same ? "PASS" : "FAIL") << " golden summary\n";
  return ok && same;
}

}  // namespace

bool verify_golden(const fs::path& dir, std::ostream& log) {
  if (fs::exists(dir / "config.txt")) return verify_one(dir, log);
  std::vector<fs::path> sets;
  if (fs::is_directory(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory() && fs::exists(e.path() / "config.txt")) sets.push_back(e.path());
  std::sort(sets.begin(), sets.end());
  if (sets.empty()) {
    log << "FAIL no golden sets under " << dir.string() << "\n";
    return false;
  }
  bool ok = true;
  for (const auto& d : sets) ok = verify_one(d, log) && ok;
  return ok;
}

bool verify_properties(std::ostream& log) {
  const acceptance::CriterionResult r = acceptance::property_suite(log);
  return r.passed;
}

}  // namespace jbpcic
