#include "jbpcic/qnetwork.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jbpcic {

namespace {

Eigen::MatrixXd sigmoid_of(const Eigen::MatrixXd& z) {
  return z.unaryExpr([](double x) { return sigmoid(x); });
}

}  // namespace

QNetwork::QNetwork(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw std::invalid_argument("QNetwork: need at least input and output widths");
  for (std::size_t i = 0; i + 1 < widths_.size(); ++i)
    layers_.push_back({Eigen::MatrixXd::Zero(widths_[i + 1], widths_[i]), Eigen::VectorXd::Zero(widths_[i + 1])});
}

void QNetwork::randomize(Rng& rng) {
  for (auto& layer : layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.w.rows() + layer.w.cols()));
    for (Eigen::Index c = 0; c < layer.w.cols(); ++c)
      for (Eigen::Index r = 0; r < layer.w.rows(); ++r) layer.w(r, c) = limit * (2.0 * uniform01(rng) - 1.0);
    layer.b.setZero();
  }
}

Eigen::VectorXd QNetwork::forward(std::span<const double> s) const {
  if (static_cast<int>(s.size()) != input_dim())
    throw std::invalid_argument("QNetwork::forward: state has " + std::to_string(s.size()) + " entries, expected " +
                                std::to_string(input_dim()));
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::VectorXd z = layers_[i].w * x + layers_[i].b;
    x = (i + 1 < layers_.size()) ? Eigen::VectorXd(sigmoid_of(z)) : z;
  }
  return x;
}

Eigen::MatrixXd QNetwork::forward_batch(const Eigen::MatrixXd& states) const {
  if (states.rows() != input_dim()) throw std::invalid_argument("QNetwork::forward_batch: wrong input rows");
  Eigen::MatrixXd x = states;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = (layers_[i].w * x).colwise() + layers_[i].b;
    x = (i + 1 < layers_.size()) ? sigmoid_of(z) : z;
  }
  return x;
}

double QNetwork::loss_and_gradient(const Eigen::MatrixXd& states, std::span<const int> actions,
                                   std::span<const double> targets, std::vector<Layer>& grad) const {
  const Eigen::Index n = states.cols();
  if (static_cast<Eigen::Index>(actions.size()) != n || static_cast<Eigen::Index>(targets.size()) != n)
    throw std::invalid_argument("QNetwork::loss_and_gradient: batch sizes differ");

  std::vector<Eigen::MatrixXd> act;  // act[0] = input, act[i+1] = output of layer i
  act.reserve(layers_.size() + 1);
  act.push_back(states);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = (layers_[i].w * act.back()).colwise() + layers_[i].b;
    act.push_back((i + 1 < layers_.size()) ? sigmoid_of(z) : z);
  }

  // dL/dQ is nonzero only at the taken action.
  const Eigen::MatrixXd& q = act.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), n);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double err = q(actions[j], j) - targets[j];
    loss += err * err;
    delta(actions[j], j) = 2.0 * err / static_cast<double>(n);
  }
  loss /= static_cast<double>(n);

  grad.resize(layers_.size());
  for (std::size_t k = layers_.size(); k-- > 0;) {
    grad[k].w = delta * act[k].transpose();
    grad[k].b = delta.rowwise().sum();
    if (k == 0) break;
    Eigen::MatrixXd back = layers_[k].w.transpose() * delta;
    const Eigen::MatrixXd& h = act[k];
    delta = back.cwiseProduct(h.cwiseProduct((1.0 - h.array()).matrix()));
  }
  return loss;
}

void QNetwork::apply_gradient(const std::vector<Layer>& grad, double step) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    layers_[k].w -= step * grad[k].w;
    layers_[k].b -= step * grad[k].b;
  }
}

std::size_t QNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.w.size() + l.b.size());
  return n;
}

std::vector<double> QNetwork::parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto& l : layers_) {
    for (Eigen::Index c = 0; c < l.w.cols(); ++c)
      for (Eigen::Index r = 0; r < l.w.rows(); ++r) flat.push_back(l.w(r, c));
    for (Eigen::Index r = 0; r < l.b.size(); ++r) flat.push_back(l.b(r));
  }
  return flat;
}

void QNetwork::set_parameters(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw std::invalid_argument("QNetwork::set_parameters: wrong length");
  std::size_t i = 0;
  for (auto& l : layers_) {
    for (Eigen::Index c = 0; c < l.w.cols(); ++c)
      for (Eigen::Index r = 0; r < l.w.rows(); ++r) l.w(r, c) = flat[i++];
    for (Eigen::Index r = 0; r < l.b.size(); ++r) l.b(r) = flat[i++];
  }
}

bool QNetwork::finite() const {
  for (const auto& l : layers_)
    if (!l.w.allFinite() || !l.b.allFinite()) return false;
  return true;
}

double max_q(const QNetwork& net, const StateVector& s) { return net.forward(s).maxCoeff(); }

double bellman_target(double r, const StateVector& s_next, bool terminal, const QNetwork& net,
                      double discount) {
  if (terminal || discount == 0.0) return r;
  return r + discount * max_q(net, s_next);
}

SgdResult sgd_step(QNetwork& net, std::span<const Experience> batch, double discount, double learning_rate) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  Eigen::MatrixXd states(net.input_dim(), n);
  Eigen::MatrixXd next(net.input_dim(), n);
  std::vector<int> actions(batch.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int i = 0; i < kStateDim; ++i) {
      states(i, j) = batch[j].s[i];
      next(i, j) = batch[j].s_next[i];
    }
    actions[j] = batch[j].a;
  }
  const Eigen::MatrixXd q_next = net.forward_batch(next);
  std::vector<double> targets(batch.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& e = batch[j];
    targets[j] = (e.terminal || discount == 0.0) ? e.r : e.r + discount * q_next.col(j).maxCoeff();
  }

  std::vector<QNetwork::Layer> grad;
  SgdResult out;
  out.loss = net.loss_and_gradient(states, actions, targets, grad);
  out.finite = std::isfinite(out.loss);
  if (out.finite && learning_rate != 0.0) net.apply_gradient(grad, learning_rate);
  out.finite = out.finite && net.finite();
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const QNetwork& net, const CheckpointKey& key) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint '" + path.string() + "'");
  out << "# config_hash=" << key.config_hash << " seed=" << key.seed << " episode=" << key.episode << "\n";
  out << "widths";
  for (int w : net.widths()) out << ' ' << w;
  out << "\n";
  out.precision(17);
  for (double p : net.parameters()) out << p << "\n";
}

QNetwork load_checkpoint(const std::filesystem::path& path, CheckpointKey* key) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  CheckpointKey k;
  {
    std::istringstream hs(line);
    std::string tok;
    hs >> tok;  // '#'
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const auto name = tok.substr(0, eq);
      const auto value = tok.substr(eq + 1);
      if (name == "config_hash") k.config_hash = value;
      if (name == "seed") k.seed = std::stoull(value);
      if (name == "episode") k.episode = std::stoi(value);
    }
  }
  std::getline(in, line);
  std::istringstream ws(line);
  std::string tag;
  ws >> tag;
  if (tag != "widths") throw std::runtime_error("checkpoint '" + path.string() + "': missing widths line");
  std::vector<int> widths;
  for (int w; ws >> w;) widths.push_back(w);
  QNetwork net(widths);
  std::vector<double> flat;
  for (double v; in >> v;) flat.push_back(v);
  net.set_parameters(flat);
  if (key) *key = k;
  return net;
}

}  // namespace jbpcic
