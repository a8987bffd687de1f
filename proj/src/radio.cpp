#include "jbpcic/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace jbpcic {

ActionRegister::ActionRegister(int v) {
  if (v < 0 || v >= kNumActions) throw std::invalid_argument("action register value outside [0, 15]");
  value = static_cast<std::uint8_t>(v);
}

std::string ActionRegister::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  return std::string(1, digits[value & 0xf]);
}

double CodeRateMap::rate(double sinr_db) const {
  double r = levels_.empty() ? 1.0 : levels_.front().rate;
  for (const auto& l : levels_)
    if (sinr_db >= l.min_sinr_db) r = l.rate;
  return r;
}

double rx_power_mw(double p_tx_dbm, std::span<const cplx> h, std::span<const cplx> f) {
  if (h.size() != f.size()) throw std::invalid_argument("rx_power: channel and beam sizes differ");
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < h.size(); ++m) acc += h[m] * f[m];
  return db_to_linear(p_tx_dbm) * std::norm(acc);
}

double rx_power_mw(double p_tx_dbm, const ChannelRealization& h, const SteeringVector& f) {
  return rx_power_mw(p_tx_dbm, std::span<const cplx>(h.h), std::span<const cplx>(f.entries));
}

double sinr_linear(const RadioState& state, const BeamCodebook& codebook, int ue) {
  const int serving = state.serving.at(ue);
  const auto& links = state.channel.at(ue);
  double signal = 0.0;
  double interference = 0.0;
  for (int b = 0; b < state.num_bs(); ++b) {
    const double p = rx_power_mw(state.power_dbm[b], links[b], codebook[state.beam[b]]);
    if (b == serving)
      signal = p;
    else
      interference += p;
  }
  return signal / (db_to_linear(state.noise_dbm) + interference);
}

double sinr_db(const RadioState& state, const BeamCodebook& codebook, int ue) {
  return linear_to_db(sinr_linear(state, codebook, ue));
}

double effective_sinr(double sinr_db, Bearer bearer, const CodeRateMap& code_map) {
  if (bearer == Bearer::data) return sinr_db;
  return sinr_db + 10.0 * std::log10(1.0 / code_map.rate(sinr_db));
}

double fpa_power(int n_prb_total, int n_prb_ue, double max_power_dbm) {
  if (n_prb_total < 1 || n_prb_ue < 1 || n_prb_ue > n_prb_total)
    throw std::invalid_argument("fpa_power: PRB allocation outside [1, total]");
  return max_power_dbm - 10.0 * std::log10(n_prb_total) + 10.0 * std::log10(n_prb_ue);
}

double apply_power_cmd(double p_prev_dbm, double delta_db, double max_power_dbm,
                       std::optional<double> floor_dbm) {
  if (delta_db != 1.0 && delta_db != -1.0 && delta_db != 3.0 && delta_db != -3.0)
    throw std::invalid_argument("apply_power_cmd: offset must be one of +-1, +-3 dB");
  double p = std::min(max_power_dbm, p_prev_dbm + delta_db);
  if (floor_dbm) p = std::max(p, *floor_dbm);
  return p;
}

int step_beam(int n, int direction, int antennas) { return ((n + direction) % antennas + antennas) % antennas; }

int pcode(int field) {
  static constexpr int table[4] = {-3, -1, 1, 3};
  if (field < 0 || field > 3) throw std::invalid_argument("pcode: field outside [0, 3]");
  return table[field];
}

JointCommand decode_action(ActionRegister a, Bearer bearer) {
  JointCommand cmd;
  if (bearer == Bearer::voice) {
    cmd.power_b_db = pcode(a.field(0, 1));
    cmd.power_l_db = pcode(a.field(2, 3));
    return cmd;
  }
  auto signed_bit = [](int bit) { return bit ? 1 : -1; };
  cmd.power_b_db = signed_bit(a.bit(0));
  cmd.power_l_db = signed_bit(a.bit(1));
  cmd.beam_step_l = signed_bit(a.bit(2));
  cmd.beam_step_b = signed_bit(a.bit(3));
  return cmd;
}

namespace {

int field_of(int code) {
  for (int f = 0; f < 4; ++f)
    if (pcode(f) == code) return f;
  throw std::invalid_argument("encode_action: power offset is not a code point");
}

int bit_of(int signed_step) {
  if (signed_step == 1) return 1;
  if (signed_step == -1) return 0;
  throw std::invalid_argument("encode_action: data commands are +-1 steps");
}

}  // namespace

ActionRegister encode_action(const JointCommand& cmd, Bearer bearer) {
  int v = 0;
  if (bearer == Bearer::voice) {
    const int f01 = field_of(cmd.power_b_db);
    const int f23 = field_of(cmd.power_l_db);
    // a[i,j] = 2 a[i] + a[j]
    v |= (f01 >> 1) << 0;
    v |= (f01 & 1) << 1;
    v |= (f23 >> 1) << 2;
    v |= (f23 & 1) << 3;
  } else {
    v |= bit_of(cmd.power_b_db) << 0;
    v |= bit_of(cmd.power_l_db) << 1;
    v |= bit_of(cmd.beam_step_l) << 2;
    v |= bit_of(cmd.beam_step_b) << 3;
  }
  return ActionRegister(v);
}

double reward(ActionRegister a, double gamma_b_db, double gamma_l_db, Bearer bearer) {
  // The q-weighted sum with one factor always zero; evaluated by branch so an
  // infinite SINR on the unused side cannot produce 0 * inf.
  if (bearer == Bearer::voice) return pcode(a.field(0, 1)) - pcode(a.field(2, 3));
  return gamma_b_db + gamma_l_db;
}

double sum_rate(std::span<const std::vector<double>> gamma_eff_db_per_step) {
  if (gamma_eff_db_per_step.empty()) throw std::invalid_argument("sum_rate: empty series");
  double total = 0.0;
  for (const auto& step : gamma_eff_db_per_step)
    for (double g : step) total += std::log2(1.0 + db_to_linear(g));
  return total / static_cast<double>(gamma_eff_db_per_step.size());
}

}  // namespace jbpcic
