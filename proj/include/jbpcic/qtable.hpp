#pragma once

#include <span>
#include <vector>

#include "jbpcic/qnetwork.hpp"

namespace jbpcic {

// Dense |S| x |A| table of action values, zero-initialized.
class QTable {
 public:
  QTable(int states, int actions);

  int states() const { return states_; }
  int actions() const { return actions_; }

  double& operator()(int s, int a) { return q_[index(s, a)]; }
  double operator()(int s, int a) const { return q_[index(s, a)]; }
  std::span<const double> row(int s) const;
  double max_row(int s) const;
  bool finite() const;

 private:
  std::size_t index(int s, int a) const;

  int states_;
  int actions_;
  std::vector<double> q_;
};

// Quantizes each entry of a state vector normalized to [-1, 1] into `bins`
// equal bins and returns the mixed-radix row index.
class StateQuantizer {
 public:
  StateQuantizer(int dims, int bins);

  int rows() const { return rows_; }
  int index(std::span<const double> normalized) const;

 private:
  int dims_;
  int bins_;
  int rows_;
};

// Q(s,a) := (1 - alpha) Q(s,a) + alpha (r + discount * max_a' Q(s', a')).
// A terminal transition drops the bootstrap term.
void tabular_update(QTable& q, int s, int a, double r, int s_next, double alpha, double discount,
                    bool terminal = false);

}  // namespace jbpcic
