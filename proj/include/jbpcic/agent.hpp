#pragma once

#include <memory>
#include <optional>

#include "jbpcic/config.hpp"
#include "jbpcic/policy.hpp"
#include "jbpcic/qnetwork.hpp"
#include "jbpcic/qtable.hpp"
#include "jbpcic/radio.hpp"
#include "jbpcic/replay_buffer.hpp"

namespace jbpcic {

// A decision engine driven by the episode loop. Learning engines keep their
// state (weights, table, epsilon, replay) across episodes.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual EngineKind kind() const = 0;
  virtual void begin_episode() {}

  // Next joint action for state s, or nullopt to hold the current powers and
  // beams. Learning engines decay epsilon here, before choosing.
  virtual std::optional<ActionRegister> act(const StateVector& s) = 0;

  // Stores a transition and trains on it. Returns the minibatch loss, or NaN
  // when no gradient step was taken.
  virtual double learn(const Experience& e);

  // Adds the end-of-episode bonus to the most recent transition.
  virtual void add_terminal_bonus(double bonus);

  // False once training produced a non-finite value.
  virtual bool healthy() const { return true; }
  virtual double epsilon() const { return 0.0; }
};

// Fixed power allocation: equal split over PRBs, no commands, no learning.
class FpaAgent final : public Agent {
 public:
  EngineKind kind() const override { return EngineKind::fpa; }
  std::optional<ActionRegister> act(const StateVector&) override { return std::nullopt; }
};

class TabularAgent final : public Agent {
 public:
  TabularAgent(const NetworkConfig& cfg, std::uint64_t seed);

  EngineKind kind() const override { return EngineKind::tabular; }
  void begin_episode() override;
  std::optional<ActionRegister> act(const StateVector& s) override;
  double learn(const Experience& e) override;
  void add_terminal_bonus(double bonus) override;
  bool healthy() const override { return table_.finite(); }
  double epsilon() const override { return policy_.epsilon; }

  const QTable& table() const { return table_; }

 private:
  NetworkConfig cfg_;
  StateQuantizer quantizer_;
  QTable table_;
  PolicyState policy_;
  Rng rng_;
  int last_s_ = -1;
  int last_a_ = -1;
};

class DqnAgent final : public Agent {
 public:
  DqnAgent(const NetworkConfig& cfg, std::uint64_t seed);

  EngineKind kind() const override { return EngineKind::dqn; }
  void begin_episode() override;
  std::optional<ActionRegister> act(const StateVector& s) override;
  double learn(const Experience& e) override;
  void add_terminal_bonus(double bonus) override;
  bool healthy() const override { return healthy_; }
  double epsilon() const override { return policy_.epsilon; }

  const QNetwork& network() const { return net_; }
  QNetwork& network() { return net_; }
  const ReplayBuffer& replay() const { return replay_; }

 private:
  NetworkConfig cfg_;
  QNetwork net_;
  ReplayBuffer replay_;
  PolicyState policy_;
  Rng rng_;
  bool healthy_ = true;
};

PolicyState initial_policy(const NetworkConfig& cfg);

// Throws std::invalid_argument for the brute-force engine, which is not an agent.
std::unique_ptr<Agent> make_agent(EngineKind kind, const NetworkConfig& cfg, std::uint64_t seed);

}  // namespace jbpcic
