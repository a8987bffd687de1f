#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jbpcic/episode.hpp"

namespace jbpcic {

// 1-based position of the first converged episode; nullopt when none converged.
std::optional<int> convergence_episode(std::span<const EpisodeResult> results);

struct CcdfPoint {
  double threshold_db = 0.0;
  double probability = 0.0;  // P(X > threshold)
};

// Empirical P(X > x) at x = x_lo, x_lo + step, ..., covering [min, max] of
// the samples, where x_lo is min rounded down to the grid. Throws
// std::invalid_argument on an empty sample or a non-positive step.
std::vector<CcdfPoint> ccdf(std::span<const double> samples, double step_db = 0.1);
double ccdf_at(std::span<const double> samples, double threshold_db);

// Linear interpolation between order statistics (p in [0, 100]).
double percentile(std::vector<double> samples, double p);
double median(std::vector<double> samples);

struct ThroughputLoss {
  double throughput_bps = 0.0;
  long long lost_frames = 0;
};

// b / (T zeta) and ceil(nu zeta).
ThroughputLoss throughput_and_frame_loss(int zeta, double frame_s, double bits, double voice_activity);

// Largest sum rate over the completed episodes; nullopt if none completed.
std::optional<double> sum_rate_summary(std::span<const EpisodeResult> results);

}  // namespace jbpcic
