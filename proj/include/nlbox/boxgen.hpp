// boxgen.hpp
// Behavior-box generation. The production path is always the sequential
// procedure: expand the shared state in Alice's basis, take Alice's outcome by
// the Born rule, collapse Bob's qubit, re-express it in Bob's basis, and apply
// the outcome rule to Bob's coefficients.

#pragma once

#include <array>
#include <numbers>

#include "nlbox/core.hpp"
#include "nlbox/rules.hpp"

namespace nlbox {

// Measurement axis angle per input bit, in the shared half-angle convention
// (see core.hpp). alice[x] and bob[y] give the bit-0 eigenaxis for input x/y.
struct MeasurementAxes {
  std::array<double, 2> alice;
  std::array<double, 2> bob;
};

// Per-input basis matrices. Carrying matrices instead of angles lets the
// standard -z basis keep exact zero coefficients; half-angle trig of pi would
// leak cos(pi/2) ~ 6e-17 into an eigenstate collapse, which small rule powers
// amplify into visible probability errors.
struct MeasurementBases {
  std::array<BasisCoefficients, 2> alice;
  std::array<BasisCoefficients, 2> bob;

  static MeasurementBases from_axes(const MeasurementAxes& axes);
  /// Bases for the standard inputs: Alice {+z, theta}, Bob {-z, theta_tilde}.
  static MeasurementBases standard(const MeasurementConfig& cfg);
};

// The -z basis (bit 0 for |down>) as the axis-pi instance of the half-angle
// pattern, with the trig values exact.
inline constexpr BasisCoefficients kMinusZBasis{{{0.0, 1.0}, {-1.0, 0.0}}};

// Probability of the outcome carried by coefficient c0 after a collapse.
// A collapse onto a basis state leaves nothing for the rule to weigh: if
// exactly one coefficient vanishes the outcome is certain for every rule,
// including n = 0. Superpositions go through eval_f0.
double outcome_probability(const ProbabilityRule& rule, const Amplitude& c0,
                           const Amplitude& c1);

// Single-setting distribution of the sequential procedure: Alice's Born
// probabilities and Bob's bit-0 probability conditioned on each of her
// outcomes. bob_p0[a] is arbitrary (0.5) when alice_prob[a] == 0.
struct SettingDistribution {
  std::array<double, 2> alice_prob;
  std::array<double, 2> bob_p0;
};

SettingDistribution setting_distribution(const TwoQubitState& state,
                                         const BasisCoefficients& alice,
                                         const BasisCoefficients& bob,
                                         const ProbabilityRule& rule);

/// Sequential-procedure box for arbitrary per-input bases.
BehaviorBox sequential_box(const TwoQubitState& state,
                           const MeasurementBases& bases,
                           const ProbabilityRule& rule);
BehaviorBox sequential_box(const TwoQubitState& state,
                           const MeasurementAxes& axes,
                           const ProbabilityRule& rule);

/// Sequential box for the standard inputs.
BehaviorBox joint_distribution(const TwoQubitState& state,
                               const MeasurementConfig& cfg,
                               const ProbabilityRule& rule);

// Closed form of the standard-input box for the |alpha| = |beta| state. The
// a==b and a!=b cells are equal by construction:
//   P(0,0|1,0) = 1/2 F0(cos(t/2), sin(t/2)),  t = theta
//   P(0,0|0,1) = 1/2 F0(sin(u/2), cos(u/2)),  u = theta_tilde
//   P(0,0|1,1) = 1/2 F0(sin((t+u)/2), cos((t+u)/2))
BehaviorBox bell_closed_form(double theta, double theta_tilde,
                             const ProbabilityRule& rule);

/// P(a,b|x,y) = 1/2 where a xor b == x*y, else 0.
BehaviorBox pr_box();

// CHSH-observable axes in the half-angle convention, with outcome +1 mapped
// to output 0: x=0 is sigma_x, x=1 is sigma_z, y=0 is (sigma_z - sigma_x)/
// sqrt(2), y=1 is -(sigma_z + sigma_x)/sqrt(2). The Bob observables are spin
// measurements along the +-45 degree axes of the z-x plane, diagonalized
// analytically.
inline constexpr MeasurementAxes kChshObservableAxes{
    {-std::numbers::pi / 2.0, 0.0},
    {std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 4.0}};

/// Sequential box of the CHSH observables on the |alpha| = |beta| state.
BehaviorBox chsh_observables_box(const ProbabilityRule& rule);

}  // namespace nlbox
