#include "jbpcic/replay_buffer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace jbpcic {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  entries_.reserve(static_cast<std::size_t>(capacity));
}

void ReplayBuffer::push(const Experience& e) {
  if (size() < capacity_) {
    entries_.push_back(e);
    return;
  }
  entries_[head_] = e;
  head_ = (head_ + 1) % capacity_;
}

const Experience& ReplayBuffer::at(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("ReplayBuffer::at");
  return entries_[static_cast<std::size_t>((head_ + i) % size())];
}

Experience& ReplayBuffer::newest() {
  if (entries_.empty()) throw std::out_of_range("ReplayBuffer::newest on empty buffer");
  return entries_[static_cast<std::size_t>((head_ + size() - 1) % size())];
}

std::vector<int> ReplayBuffer::sample_indices(int n, Rng& rng) const {
  const int m = size();
  if (n > m) throw std::invalid_argument("ReplayBuffer::sample: not enough experiences");
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(n));
  auto draw = [&rng](int bound) { return static_cast<int>(uniform01(rng) * bound); };
  if (2 * n > m) {
    // Partial Fisher-Yates when the draw covers most of the buffer.
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < n; ++i) {
      const int j = i + draw(m - i);
      std::swap(idx[i], idx[j]);
      picked.push_back(idx[i]);
    }
    return picked;
  }
  while (static_cast<int>(picked.size()) < n) {
    const int j = draw(m);
    if (std::find(picked.begin(), picked.end(), j) == picked.end()) picked.push_back(j);
  }
  return picked;
}

std::vector<Experience> ReplayBuffer::sample(int n, Rng& rng) const {
  std::vector<Experience> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i : sample_indices(n, rng)) out.push_back(at(i));
  return out;
}

}  // namespace jbpcic
