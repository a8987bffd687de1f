#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jbpcic/channel.hpp"
#include "jbpcic/config.hpp"

namespace jbpcic {

// Role indices of the two-cell setup. BS/UE 0 plays role l, BS/UE 1 role b;
// UE i is served by BS i.
inline constexpr int kRoleL = 0;
inline constexpr int kRoleB = 1;

inline constexpr int kNumActions = 16;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// 4-bit joint action. Bit i of `value` is a[i]; the 2-bit field a[i,j] reads
// a[i] as its high bit.
struct ActionRegister {
  std::uint8_t value = 0;

  ActionRegister() = default;
  explicit ActionRegister(int v);

  int bit(int i) const { return (value >> i) & 1; }
  int field(int i, int j) const { return 2 * bit(i) + bit(j); }
  std::string hex() const;
  friend bool operator==(ActionRegister, ActionRegister) = default;
};

// Decoded commands. Beam steps are zero for voice.
struct JointCommand {
  int power_b_db = 0;
  int power_l_db = 0;
  int beam_step_l = 0;
  int beam_step_b = 0;
  friend bool operator==(const JointCommand&, const JointCommand&) = default;
};

class CodeRateMap {
 public:
  CodeRateMap() = default;
  explicit CodeRateMap(std::vector<CodeRateLevel> levels) : levels_(std::move(levels)) {}

  // Rate of the highest level whose threshold does not exceed sinr_db.
  double rate(double sinr_db) const;
  const std::vector<CodeRateLevel>& levels() const { return levels_; }

 private:
  std::vector<CodeRateLevel> levels_;
};

// Everything the SINR of every UE depends on at one time step.
struct RadioState {
  std::vector<double> power_dbm;                         // per BS
  std::vector<int> beam;                                 // per BS codebook index
  std::vector<std::vector<ChannelRealization>> channel;  // [ue][bs]
  std::vector<int> serving;                              // per UE
  double noise_dbm = -174.0;
  Bearer bearer = Bearer::data;

  int num_bs() const { return static_cast<int>(power_dbm.size()); }
  int num_ue() const { return static_cast<int>(channel.size()); }
};

// P_tx * |h^T f|^2 in mW. Throws std::invalid_argument on a size mismatch.
double rx_power_mw(double p_tx_dbm, std::span<const cplx> h, std::span<const cplx> f);
double rx_power_mw(double p_tx_dbm, const ChannelRealization& h, const SteeringVector& f);

double sinr_linear(const RadioState& state, const BeamCodebook& codebook, int ue);
double sinr_db(const RadioState& state, const BeamCodebook& codebook, int ue);

// q = 1 leaves gamma unchanged; q = 0 adds the coding gain 10 log10(1 / beta(gamma)).
double effective_sinr(double sinr_db, Bearer bearer, const CodeRateMap& code_map);

// Equal split of the BS power over all PRBs. Throws std::invalid_argument for
// an allocation outside [1, total].
double fpa_power(int n_prb_total, int n_prb_ue, double max_power_dbm = 46.0);

// min(max, previous + delta), optionally floored. Delta must be one of +-1, +-3 dB.
double apply_power_cmd(double p_prev_dbm, double delta_db, double max_power_dbm = 46.0,
                       std::optional<double> floor_dbm = std::nullopt);

int step_beam(int n, int direction, int antennas);

// p(00) = -3, p(01) = -1, p(10) = +1, p(11) = +3.
int pcode(int field);

JointCommand decode_action(ActionRegister a, Bearer bearer);
ActionRegister encode_action(const JointCommand& cmd, Bearer bearer);

// Per-step reward before terminal adjustments: (p(a[0,1]) - p(a[2,3])) for
// voice, gamma_b + gamma_l (dB) for data.
double reward(ActionRegister a, double gamma_b_db, double gamma_l_db, Bearer bearer);

// Average over T steps of sum_j log2(1 + gamma_eff_j), with each gamma
// converted from dB to a linear ratio first. Throws on an empty series.
double sum_rate(std::span<const std::vector<double>> gamma_eff_db_per_step);

}  // namespace jbpcic
