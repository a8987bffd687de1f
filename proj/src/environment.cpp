#include "jbpcic/environment.hpp"

#include <optional>

namespace jbpcic {

Environment::Environment(const NetworkConfig& cfg, int antennas, std::uint64_t seed)
    : cfg_(cfg),
      antennas_(antennas),
      seed_(seed),
      layout_(build_layout(cfg, antennas)),
      codebook_(build_codebook(antennas, cfg.d_over_lambda, cfg.alignment)),
      code_map_(cfg.code_rates),
      pl_model_(path_loss_model(cfg)),
      link_(link_geometry(cfg, antennas)),
      initial_power_dbm_(fpa_power(cfg.n_prb_total, cfg.n_prb_ue, cfg.max_power_dbm)),
      mobility_rng_(make_rng(seed, Stream::mobility)) {
  Rng drop_rng = make_rng(seed, Stream::drop);
  for (const auto& site : layout_.sites) {
    drop_.push_back(sample_in_cell(layout_, site.id, drop_rng));
    Ue ue;
    ue.id = site.id;
    ue.position = drop_.back();
    ue.speed_kmh = cfg.speed_kmh;
    ue.serving_bs = site.id;
    ue.bearer = cfg.bearer;
    ues_.push_back(ue);
  }
  Rng init_rng = make_rng(seed, Stream::init_state);
  for (std::size_t b = 0; b < layout_.sites.size(); ++b)
    initial_beams_.push_back(static_cast<int>(uniform01(init_rng) * antennas));

  radio_.noise_dbm = cfg.noise_power_dbm();
  radio_.bearer = cfg.bearer;
  for (const auto& ue : ues_) radio_.serving.push_back(ue.serving_bs);
  reset_bs_state();
  begin_episode(1);
}

void Environment::reset_bs_state() {
  radio_.power_dbm.assign(layout_.sites.size(), initial_power_dbm_);
  radio_.beam = initial_beams_;
}

void Environment::begin_episode(int episode) {
  Rng ch_rng = make_rng(seed_, Stream::channel, static_cast<std::uint64_t>(episode));
  mobility_rng_ = make_rng(seed_, Stream::mobility, static_cast<std::uint64_t>(episode));
  radio_.channel.assign(ues_.size(), {});
  for (std::size_t u = 0; u < ues_.size(); ++u) {
    ues_[u].position = drop_[u];
    for (const auto& site : layout_.sites)
      radio_.channel[u].push_back(sample_channel(site, ues_[u].position, link_, pl_model_, ch_rng));
  }
}

void Environment::advance() {
  const double dt = cfg_.step_s;
  for (std::size_t u = 0; u < ues_.size(); ++u) {
    ues_[u] = step_mobility(ues_[u], dt, layout_, mobility_rng_);
    for (const auto& site : layout_.sites)
      update_channel(radio_.channel[u][static_cast<std::size_t>(site.id)], site, ues_[u].position, link_, pl_model_);
  }
}

void Environment::apply(const JointCommand& cmd) {
  const std::optional<double> floor =
      cfg_.power_floor_enabled ? std::optional<double>(cfg_.power_floor_dbm) : std::nullopt;
  auto& p = radio_.power_dbm;
  p[kRoleB] = apply_power_cmd(p[kRoleB], cmd.power_b_db, cfg_.max_power_dbm, floor);
  p[kRoleL] = apply_power_cmd(p[kRoleL], cmd.power_l_db, cfg_.max_power_dbm, floor);
  if (cmd.beam_step_l != 0) radio_.beam[kRoleL] = step_beam(radio_.beam[kRoleL], cmd.beam_step_l, antennas_);
  if (cmd.beam_step_b != 0) radio_.beam[kRoleB] = step_beam(radio_.beam[kRoleB], cmd.beam_step_b, antennas_);
}

std::vector<double> Environment::sinr_db() const {
  std::vector<double> out;
  for (int u = 0; u < radio_.num_ue(); ++u) out.push_back(jbpcic::sinr_db(radio_, codebook_, u));
  return out;
}

std::vector<double> Environment::sinr_eff_db() const {
  auto g = sinr_db();
  for (double& x : g) x = effective_sinr(x, cfg_.bearer, code_map_);
  return g;
}

StateVector Environment::observe() const {
  StateVector s{};
  const double r = layout_.cell_radius_m;
  const auto offset = [&](int role) { return ues_[role].position - layout_.sites[role].position; };
  const Vec2 ol = offset(kRoleL);
  const Vec2 ob = offset(kRoleB);
  s[0] = ol.x / r;
  s[1] = ol.y / r;
  s[2] = ob.x / r;
  s[3] = ob.y / r;
  s[4] = (radio_.power_dbm[kRoleL] - cfg_.max_power_dbm) / 40.0;
  s[5] = (radio_.power_dbm[kRoleB] - cfg_.max_power_dbm) / 40.0;
  const auto beam = [&](int role) { return 2.0 * (radio_.beam[role] + 0.5) / antennas_ - 1.0; };
  s[6] = beam(kRoleL);
  s[7] = beam(kRoleB);
  return s;
}

}  // namespace jbpcic
