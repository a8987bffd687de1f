#pragma once

#include <span>

#include "jbpcic/rng.hpp"

namespace jbpcic {

struct PolicyState {
  double epsilon = 1.0;
  double decay = 0.9995;
  double epsilon_min = 0.10;
};

// epsilon := max(epsilon * d, epsilon_min)
PolicyState decay_epsilon(PolicyState p);

// Index of the largest q-value, lowest index on ties.
int argmax(std::span<const double> q);

// With probability epsilon a uniform action, otherwise argmax(q). One uniform
// draw decides the branch and, when exploring, a second picks the action.
int select_action(std::span<const double> q, const PolicyState& policy, Rng& rng);

}  // namespace jbpcic
