#include "jbpcic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jbpcic {

std::optional<int> convergence_episode(std::span<const EpisodeResult> results) {
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].converged) return static_cast<int>(i) + 1;
  return std::nullopt;
}

double ccdf_at(std::span<const double> samples, double threshold_db) {
  if (samples.empty()) throw std::invalid_argument("ccdf: no samples");
  const auto above = std::count_if(samples.begin(), samples.end(), [&](double x) { return x > threshold_db; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

std::vector<CcdfPoint> ccdf(std::span<const double> samples, double step_db) {
  if (samples.empty()) throw std::invalid_argument("ccdf: no samples");
  if (!(step_db > 0.0)) throw std::invalid_argument("ccdf: step must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const long long k0 = static_cast<long long>(std::floor(sorted.front() / step_db));
  const long long k1 = static_cast<long long>(std::ceil(sorted.back() / step_db));
  std::vector<CcdfPoint> out;
  out.reserve(static_cast<std::size_t>(k1 - k0 + 1));
  for (long long k = k0; k <= k1; ++k) {
    const double x = static_cast<double>(k) * step_db;
    const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    out.push_back({x, (n - static_cast<double>(at_or_below)) / n});
  }
  return out;
}

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("percentile: no samples");
  if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile: p outside [0, 100]");
  std::sort(samples.begin(), samples.end());
  const double pos = p / 100.0 * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  // Avoids inf - inf when both neighbours are infinite.
  if (samples[hi] == samples[lo] || pos == static_cast<double>(lo)) return samples[lo];
  return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

double median(std::vector<double> samples) { return percentile(std::move(samples), 50.0); }

ThroughputLoss throughput_and_frame_loss(int zeta, double frame_s, double bits, double voice_activity) {
  if (zeta < 1) throw std::invalid_argument("throughput: convergence episode must be at least 1");
  if (!(frame_s > 0.0)) throw std::invalid_argument("throughput: frame duration must be positive");
  if (voice_activity < 0.0) throw std::invalid_argument("throughput: negative activity factor");
  // The small slack keeps products such as 0.8 * 10 from rounding up past an integer.
  const double frames = voice_activity * zeta;
  return {bits / (frame_s * zeta), static_cast<long long>(std::ceil(frames - 1e-9 * std::max(1.0, frames)))};
}

std::optional<double> sum_rate_summary(std::span<const EpisodeResult> results) {
  std::optional<double> best;
  for (const auto& r : results)
    if (const auto v = episode_sum_rate(r); v && (!best || *v > *best)) best = v;
  return best;
}

}  // namespace jbpcic
