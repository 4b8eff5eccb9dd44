#include "nlbox/boxgen.hpp"

#include <cmath>

namespace nlbox {

double outcome_probability(const ProbabilityRule& rule, const Amplitude& c0,
                           const Amplitude& c1) {
  const double q0 = std::norm(c0);
  const double q1 = std::norm(c1);
  if (q0 == 0.0 && q1 == 0.0) throw DegenerateAmplitudes{};
  if (q1 == 0.0) return 1.0;
  if (q0 == 0.0) return 0.0;
  return eval_f0(rule, c0, c1);
}

MeasurementBases MeasurementBases::from_axes(const MeasurementAxes& axes) {
  return MeasurementBases{
      {basis_change(axes.alice[0]), basis_change(axes.alice[1])},
      {basis_change(axes.bob[0]), basis_change(axes.bob[1])}};
}

MeasurementBases MeasurementBases::standard(const MeasurementConfig& cfg) {
  return MeasurementBases{
      {basis_change(0.0), basis_change(cfg.theta())},
      {kMinusZBasis, basis_change(cfg.theta_tilde())}};
}

SettingDistribution setting_distribution(const TwoQubitState& state,
                                         const BasisCoefficients& ma,
                                         const BasisCoefficients& mb,
                                         const ProbabilityRule& rule) {
  SettingDistribution dist{};
  for (int a = 0; a < 2; ++a) {
    // Bob's unnormalized residual in the {up, down} basis after Alice sees a.
    const Amplitude res_up = state.beta() * ma[1][a];
    const Amplitude res_down = state.alpha() * ma[0][a];
    const double prob = std::norm(res_up) + std::norm(res_down);
    dist.alice_prob[a] = prob;
    if (prob == 0.0) {
      dist.bob_p0[a] = 0.5;  // never reached; keeps the table well-defined
      continue;
    }
    // Re-express in Bob's basis. The rule is scale-invariant, so the residual
    // need not be normalized first.
    const Amplitude c0 = res_up * mb[0][0] + res_down * mb[1][0];
    const Amplitude c1 = res_up * mb[0][1] + res_down * mb[1][1];
    dist.bob_p0[a] = outcome_probability(rule, c0, c1);
  }
  return dist;
}

BehaviorBox sequential_box(const TwoQubitState& state,
                           const MeasurementBases& bases,
                           const ProbabilityRule& rule) {
  std::array<double, 16> cells{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const SettingDistribution dist =
          setting_distribution(state, bases.alice[x], bases.bob[y], rule);
      for (int a = 0; a < 2; ++a) {
        cells[BehaviorBox::index(a, 0, x, y)] =
            dist.alice_prob[a] * dist.bob_p0[a];
        cells[BehaviorBox::index(a, 1, x, y)] =
            dist.alice_prob[a] * (1.0 - dist.bob_p0[a]);
      }
    }
  }
  return BehaviorBox{cells};
}

BehaviorBox sequential_box(const TwoQubitState& state,
                           const MeasurementAxes& axes,
                           const ProbabilityRule& rule) {
  return sequential_box(state, MeasurementBases::from_axes(axes), rule);
}

BehaviorBox joint_distribution(const TwoQubitState& state,
                               const MeasurementConfig& cfg,
                               const ProbabilityRule& rule) {
  return sequential_box(state, MeasurementBases::standard(cfg), rule);
}

BehaviorBox bell_closed_form(double theta, double theta_tilde,
                             const ProbabilityRule& rule) {
  // Weight on the a == b cells per setting; the a != b cells carry the rest.
  const double g10 =
      outcome_probability(rule, std::cos(theta / 2.0), std::sin(theta / 2.0));
  const double g01 = outcome_probability(rule, std::sin(theta_tilde / 2.0),
                                         std::cos(theta_tilde / 2.0));
  const double half_sum = (theta + theta_tilde) / 2.0;
  const double g11 =
      outcome_probability(rule, std::sin(half_sum), std::cos(half_sum));

  std::array<double, 16> cells{};
  const auto fill = [&cells](int x, int y, double equal_weight) {
    cells[BehaviorBox::index(0, 0, x, y)] = 0.5 * equal_weight;
    cells[BehaviorBox::index(1, 1, x, y)] = 0.5 * equal_weight;
    cells[BehaviorBox::index(0, 1, x, y)] = 0.5 * (1.0 - equal_weight);
    cells[BehaviorBox::index(1, 0, x, y)] = 0.5 * (1.0 - equal_weight);
  };
  fill(0, 0, 1.0);
  fill(1, 0, g10);
  fill(0, 1, g01);
  fill(1, 1, g11);
  return BehaviorBox{cells};
}

BehaviorBox pr_box() {
  std::array<double, 16> cells{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          cells[BehaviorBox::index(a, b, x, y)] =
              ((a ^ b) == (x & y)) ? 0.5 : 0.0;
        }
      }
    }
  }
  return BehaviorBox{cells};
}

BehaviorBox chsh_observables_box(const ProbabilityRule& rule) {
  return sequential_box(TwoQubitState::bell(), kChshObservableAxes, rule);
}

}  // namespace nlbox
