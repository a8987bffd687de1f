#pragma once

#include <vector>

#include "jbpcic/qnetwork.hpp"
#include "jbpcic/rng.hpp"

namespace jbpcic {

// Fixed-capacity ring of experiences; the oldest entry is evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(const Experience& e);
  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }

  // Entry i in insertion order (0 = oldest retained).
  const Experience& at(int i) const;
  const Experience& newest() const { return at(size() - 1); }
  Experience& newest();

  // n distinct entries drawn uniformly. Throws std::invalid_argument when the
  // buffer holds fewer than n.
  std::vector<Experience> sample(int n, Rng& rng) const;
  std::vector<int> sample_indices(int n, Rng& rng) const;

 private:
  int capacity_;
  int head_ = 0;  // slot of the oldest entry once full
  std::vector<Experience> entries_;
};

}  // namespace jbpcic
