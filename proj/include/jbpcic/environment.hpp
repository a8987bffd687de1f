#pragma once

#include <cstdint>
#include <vector>

#include "jbpcic/channel.hpp"
#include "jbpcic/config.hpp"
#include "jbpcic/geometry.hpp"
#include "jbpcic/qnetwork.hpp"
#include "jbpcic/radio.hpp"
#include "jbpcic/rng.hpp"

namespace jbpcic {

// The two-cell downlink seen by every engine. One active UE per BS is dropped
// once per seed; each episode restarts the UEs at the drop, draws fresh
// large- and small-scale fading from the (seed, episode) channel stream, and
// then walks the UEs one subframe per step. BS powers and beams belong to the
// network, not the episode, and persist across episodes until reset.
class Environment {
 public:
  Environment(const NetworkConfig& cfg, int antennas, std::uint64_t seed);

  const NetworkConfig& config() const { return cfg_; }
  const Layout& layout() const { return layout_; }
  const BeamCodebook& codebook() const { return codebook_; }
  const CodeRateMap& code_map() const { return code_map_; }
  int antennas() const { return antennas_; }
  std::uint64_t seed() const { return seed_; }
  Bearer bearer() const { return cfg_.bearer; }
  const std::vector<Ue>& ues() const { return ues_; }
  const std::vector<Vec2>& drop() const { return drop_; }

  // Restores the power and beam every run starts from.
  void reset_bs_state();
  void begin_episode(int episode);
  // Moves every UE one step and refreshes its channels.
  void advance();

  RadioState& radio() { return radio_; }
  const RadioState& radio() const { return radio_; }
  double initial_power_dbm() const { return initial_power_dbm_; }

  // Applies a decoded command: clamped power offsets and circular beam steps.
  void apply(const JointCommand& cmd);

  std::vector<double> sinr_db() const;
  std::vector<double> sinr_eff_db() const;

  // Normalized observation: UE offsets from their serving site over r, powers
  // as (P - P_max) / 40, beams as 2 (n + 1/2) / M - 1.
  StateVector observe() const;

 private:
  NetworkConfig cfg_;
  int antennas_;
  std::uint64_t seed_;
  Layout layout_;
  BeamCodebook codebook_;
  CodeRateMap code_map_;
  PathLossModel pl_model_;
  LinkGeometry link_;
  std::vector<Vec2> drop_;
  std::vector<Ue> ues_;
  std::vector<int> initial_beams_;
  double initial_power_dbm_;
  RadioState radio_;
  Rng mobility_rng_;
};

}  // namespace jbpcic
