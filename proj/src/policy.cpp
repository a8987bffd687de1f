#include "jbpcic/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace jbpcic {

PolicyState decay_epsilon(PolicyState p) {
  p.epsilon = std::max(p.epsilon * p.decay, p.epsilon_min);
  return p;
}

int argmax(std::span<const double> q) {
  if (q.empty()) throw std::invalid_argument("argmax of an empty vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(q.size()); ++i)
    if (q[i] > q[best]) best = i;
  return best;
}

int select_action(std::span<const double> q, const PolicyState& policy, Rng& rng) {
  if (uniform01(rng) < policy.epsilon) {
    const int n = static_cast<int>(q.size());
    return std::min(n - 1, static_cast<int>(uniform01(rng) * n));
  }
  return argmax(q);
}

}  // namespace jbpcic
