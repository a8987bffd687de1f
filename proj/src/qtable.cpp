#include "jbpcic/qtable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jbpcic {

QTable::QTable(int states, int actions)
    : states_(states), actions_(actions), q_(static_cast<std::size_t>(states) * actions, 0.0) {
  if (states < 1 || actions < 1) throw std::invalid_argument("QTable: dimensions must be positive");
}

std::size_t QTable::index(int s, int a) const {
  if (s < 0 || s >= states_ || a < 0 || a >= actions_) throw std::out_of_range("QTable index");
  return static_cast<std::size_t>(s) * actions_ + a;
}

std::span<const double> QTable::row(int s) const {
  return std::span<const double>(q_).subspan(index(s, 0), static_cast<std::size_t>(actions_));
}

double QTable::max_row(int s) const {
  const auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

bool QTable::finite() const {
  return std::all_of(q_.begin(), q_.end(), [](double x) { return std::isfinite(x); });
}

StateQuantizer::StateQuantizer(int dims, int bins) : dims_(dims), bins_(bins), rows_(1) {
  if (dims < 1 || bins < 1) throw std::invalid_argument("StateQuantizer: dimensions must be positive");
  for (int i = 0; i < dims; ++i) rows_ *= bins;
}

int StateQuantizer::index(std::span<const double> normalized) const {
  if (static_cast<int>(normalized.size()) != dims_) throw std::invalid_argument("StateQuantizer: wrong state size");
  int idx = 0;
  for (double x : normalized) {
    const int bin = std::clamp(static_cast<int>(std::floor((x + 1.0) / 2.0 * bins_)), 0, bins_ - 1);
    idx = idx * bins_ + bin;
  }
  return idx;
}

void tabular_update(QTable& q, int s, int a, double r, int s_next, double alpha, double discount, bool terminal) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("tabular_update: learning rate must be non-negative");
  const double target = terminal ? r : r + discount * q.max_row(s_next);
  q(s, a) = (1.0 - alpha) * q(s, a) + alpha * target;
}

}  // namespace jbpcic
