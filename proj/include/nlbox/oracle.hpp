// oracle.hpp
// Independent verification paths for the sequential generator: a one-shot
// global Born computation (no collapse) and a seeded Monte Carlo sampler of
// the sequential procedure.

#pragma once

#include <array>
#include <cstdint>

#include "nlbox/boxgen.hpp"
#include "nlbox/core.hpp"
#include "nlbox/rules.hpp"

namespace nlbox {

// P(a,b|x,y) = |<phi_a^x (x) chi_b^y | psi>|^2 under the standard-input
// conventions. Order-independent by construction; valid as the n = 2
// reference for joint_distribution.
BehaviorBox born_oracle(const TwoQubitState& state,
                        const MeasurementConfig& cfg);

struct SampledBox {
  BehaviorBox box;
  std::array<double, 16> standard_error;  // sqrt(p(1-p)/shots), (x,y,a,b) order
  std::uint64_t shots;
};

// Shot-based sampler of the sequential procedure over the four standard
// settings. Streams come from splitmix64 evaluated at (seed, counter) with
// counter = shot*8 + setting*2 + draw, so the output is deterministic given
// the seed and shards merge independently of order.
SampledBox mc_sampler(const TwoQubitState& state, const MeasurementConfig& cfg,
                      const ProbabilityRule& rule, std::uint64_t shots,
                      std::uint64_t seed);

}  // namespace nlbox
