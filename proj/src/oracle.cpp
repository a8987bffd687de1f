#include "jbpcic/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace jbpcic {

std::uint64_t SearchSpace::size() const {
  const std::uint64_t per_bs = power_grid_dbm.size() * static_cast<std::uint64_t>(codebook ? codebook->size() : 0);
  std::uint64_t n = 1;
  for (int i = 0; i < num_bs; ++i) n *= per_bs;
  return n;
}

namespace {

struct Best {
  std::uint64_t index = 0;
  double objective = -std::numeric_limits<double>::infinity();
  bool found = false;
};

// Candidate index -> assignment, BS 0 most significant.
void decode(std::uint64_t index, const SearchSpace& space, RadioState& work) {
  const std::uint64_t m = static_cast<std::uint64_t>(space.codebook->size());
  const std::uint64_t per_bs = space.power_grid_dbm.size() * m;
  for (int b = space.num_bs - 1; b >= 0; --b) {
    const std::uint64_t digit = index % per_bs;
    index /= per_bs;
    work.power_dbm[b] = space.power_grid_dbm[digit / m];
    work.beam[b] = static_cast<int>(digit % m);
  }
}

double objective(const RadioState& work, const BeamCodebook& codebook, const CodeRateMap& code_map) {
  double total = 0.0;
  for (int u = 0; u < work.num_ue(); ++u)
    total += effective_sinr(sinr_db(work, codebook, u), work.bearer, code_map);
  return total;
}

Best search_range(const RadioState& state, const SearchSpace& space, const CodeRateMap& code_map,
                  std::uint64_t begin, std::uint64_t end) {
  RadioState work = state;
  Best best;
  for (std::uint64_t i = begin; i < end; ++i) {
    decode(i, space, work);
    const double obj = objective(work, *space.codebook, code_map);
    if (!best.found || obj > best.objective) {
      best = {i, obj, true};
    }
  }
  return best;
}

}  // namespace

OracleResult brute_force(const RadioState& state, const SearchSpace& space, const CodeRateMap& code_map,
                         double gamma_target_db, int workers) {
  if (space.power_grid_dbm.empty()) throw std::invalid_argument("brute_force: empty power grid");
  if (!space.codebook || space.codebook->size() == 0) throw std::invalid_argument("brute_force: empty codebook");
  if (state.num_bs() != space.num_bs) throw std::invalid_argument("brute_force: BS count mismatch");

  const std::uint64_t total = space.size();
  const auto n_workers = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(workers, 1, total));
  std::vector<Best> partial(n_workers);
  if (n_workers == 1) {
    partial[0] = search_range(state, space, code_map, 0, total);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t begin = total * w / n_workers;
      const std::uint64_t end = total * (w + 1) / n_workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = search_range(state, space, code_map, begin, end); });
    }
  }

  // Chunks are contiguous and visited in order; strict '>' keeps the earliest index.
  Best best;
  for (const auto& p : partial)
    if (p.found && (!best.found || p.objective > best.objective)) best = p;

  OracleResult out;
  RadioState work = state;
  decode(best.index, space, work);
  out.power_dbm = work.power_dbm;
  out.beam = work.beam;
  out.objective = best.objective;
  out.evaluated = total;
  out.feasible = true;
  for (int u = 0; u < work.num_ue(); ++u) {
    const double g = effective_sinr(sinr_db(work, *space.codebook, u), work.bearer, code_map);
    out.sinr_eff_db.push_back(g);
    out.feasible = out.feasible && g >= gamma_target_db;
  }
  return out;
}

}  // namespace jbpcic
