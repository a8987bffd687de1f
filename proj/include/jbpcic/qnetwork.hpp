#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "jbpcic/rng.hpp"

namespace jbpcic {

inline constexpr int kStateDim = 8;
using StateVector = std::array<double, kStateDim>;

struct Experience {
  StateVector s{};
  int a = 0;
  double r = 0.0;
  StateVector s_next{};
  bool terminal = false;
};

// Fully connected Q-function: input -> sigmoid -> sigmoid -> linear output.
class QNetwork {
 public:
  struct Layer {
    Eigen::MatrixXd w;
    Eigen::VectorXd b;
  };

  QNetwork() = default;
  // Zero-initialized network with the given layer widths.
  explicit QNetwork(std::vector<int> widths);

  // Glorot-uniform weights, zero biases.
  void randomize(Rng& rng);

  int input_dim() const { return widths_.front(); }
  int output_dim() const { return widths_.back(); }
  const std::vector<int>& widths() const { return widths_; }
  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  // Throws std::invalid_argument when s has the wrong length.
  Eigen::VectorXd forward(std::span<const double> s) const;
  // Columns are samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& states) const;

  // Mean squared error over the batch of (target_j - Q(s_j, a_j))^2 and its
  // gradient with respect to every weight; targets are held constant.
  double loss_and_gradient(const Eigen::MatrixXd& states, std::span<const int> actions,
                           std::span<const double> targets, std::vector<Layer>& grad) const;

  void apply_gradient(const std::vector<Layer>& grad, double step);

  // Layer by layer: weights in column-major order, then biases.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);
  std::size_t parameter_count() const;

  bool finite() const;

 private:
  std::vector<int> widths_;
  std::vector<Layer> layers_;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double max_q(const QNetwork& net, const StateVector& s);

// r for terminal transitions, else r + discount * max_a' Q(s_next, a').
double bellman_target(double r, const StateVector& s_next, bool terminal, const QNetwork& net,
                      double discount);

struct SgdResult {
  double loss = 0.0;
  bool finite = true;
};

// One plain SGD step on a minibatch; targets come from the same network.
SgdResult sgd_step(QNetwork& net, std::span<const Experience> batch, double discount, double learning_rate);

struct CheckpointKey {
  std::string config_hash;
  std::uint64_t seed = 0;
  int episode = 0;
  friend bool operator==(const CheckpointKey&, const CheckpointKey&) = default;
};

// Plain-text checkpoint: key header, layer widths, then one parameter per line.
void save_checkpoint(const std::filesystem::path& path, const QNetwork& net, const CheckpointKey& key);
QNetwork load_checkpoint(const std::filesystem::path& path, CheckpointKey* key = nullptr);

}  // namespace jbpcic
