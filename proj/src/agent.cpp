#include "jbpcic/agent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jbpcic {

double Agent::learn(const Experience&) { return std::numeric_limits<double>::quiet_NaN(); }

void Agent::add_terminal_bonus(double) {}

PolicyState initial_policy(const NetworkConfig& cfg) {
  return {cfg.epsilon_initial, cfg.epsilon_decay, cfg.epsilon_min};
}

TabularAgent::TabularAgent(const NetworkConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      quantizer_(cfg.n_states, cfg.tabular_bins),
      table_(quantizer_.rows(), cfg.n_actions),
      policy_(initial_policy(cfg)),
      rng_(make_rng(seed, Stream::agent, static_cast<std::uint64_t>(EngineKind::tabular))) {}

void TabularAgent::begin_episode() {
  if (cfg_.epsilon_reset_per_episode) policy_.epsilon = cfg_.epsilon_initial;
}

std::optional<ActionRegister> TabularAgent::act(const StateVector& s) {
  policy_ = decay_epsilon(policy_);
  return ActionRegister(select_action(table_.row(quantizer_.index(s)), policy_, rng_));
}

double TabularAgent::learn(const Experience& e) {
  last_s_ = quantizer_.index(e.s);
  last_a_ = e.a;
  tabular_update(table_, last_s_, e.a, e.r, quantizer_.index(e.s_next), cfg_.tabular_alpha, cfg_.discount,
                 e.terminal);
  return std::numeric_limits<double>::quiet_NaN();
}

void TabularAgent::add_terminal_bonus(double bonus) {
  if (last_s_ >= 0) table_(last_s_, last_a_) += cfg_.tabular_alpha * bonus;
}

namespace {

std::vector<int> dqn_widths(const NetworkConfig& cfg) {
  std::vector<int> w{cfg.n_states};
  for (int i = 0; i < cfg.hidden_depth; ++i) w.push_back(cfg.hidden_width);
  w.push_back(cfg.n_actions);
  return w;
}

}  // namespace

DqnAgent::DqnAgent(const NetworkConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      net_(dqn_widths(cfg)),
      replay_(cfg.replay_capacity),
      policy_(initial_policy(cfg)),
      rng_(make_rng(seed, Stream::agent, static_cast<std::uint64_t>(EngineKind::dqn))) {
  net_.randomize(rng_);
}

void DqnAgent::begin_episode() {
  if (cfg_.epsilon_reset_per_episode) policy_.epsilon = cfg_.epsilon_initial;
}

std::optional<ActionRegister> DqnAgent::act(const StateVector& s) {
  policy_ = decay_epsilon(policy_);
  const Eigen::VectorXd q = net_.forward(s);
  return ActionRegister(select_action(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())),
                                      policy_, rng_));
}

double DqnAgent::learn(const Experience& e) {
  replay_.push(e);
  if (replay_.size() < cfg_.minibatch) return std::numeric_limits<double>::quiet_NaN();
  const auto batch = replay_.sample(cfg_.minibatch, rng_);
  const SgdResult res = sgd_step(net_, batch, cfg_.discount, cfg_.learning_rate);
  healthy_ = healthy_ && res.finite;
  return res.loss;
}

void DqnAgent::add_terminal_bonus(double bonus) {
  if (replay_.size() > 0) replay_.newest().r += bonus;
}

std::unique_ptr<Agent> make_agent(EngineKind kind, const NetworkConfig& cfg, std::uint64_t seed) {
  switch (kind) {
    case EngineKind::fpa:
      return std::make_unique<FpaAgent>();
    case EngineKind::tabular:
      return std::make_unique<TabularAgent>(cfg, seed);
    case EngineKind::dqn:
      return std::make_unique<DqnAgent>(cfg, seed);
    case EngineKind::brute_force:
      break;
  }
  throw std::invalid_argument("brute_force is not a learning agent");
}

}  // namespace jbpcic
