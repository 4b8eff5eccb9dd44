#include "nlbox/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlbox {

namespace {

// Bra components along (up, down) for the outcome `bit` of the axis at
// `angle`, in the shared half-angle convention.
std::array<double, 2> eigen_bra(double angle, int bit) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  if (bit == 0) return {c, -s};
  return {s, c};
}

// splitmix64 output at stream position `index` for a given seed.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01_at(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(splitmix64_at(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace

BehaviorBox born_oracle(const TwoQubitState& state,
                        const MeasurementConfig& cfg) {
  const std::array<double, 2> alice_axes = {0.0, cfg.theta()};
  const std::array<double, 2> bob_axes = {std::numbers::pi, cfg.theta_tilde()};

  std::array<double, 16> cells{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        const auto bra_a = eigen_bra(alice_axes[x], a);
        for (int b = 0; b < 2; ++b) {
          const auto bra_b = eigen_bra(bob_axes[y], b);
          // <phi_a (x) chi_b | psi> with psi_{up,down} = alpha,
          // psi_{down,up} = beta.
          const Amplitude overlap =
              bra_a[0] * bra_b[1] * state.alpha() +
              bra_a[1] * bra_b[0] * state.beta();
          cells[BehaviorBox::index(a, b, x, y)] = std::norm(overlap);
        }
      }
    }
  }
  return BehaviorBox{cells};
}

SampledBox mc_sampler(const TwoQubitState& state, const MeasurementConfig& cfg,
                      const ProbabilityRule& rule, std::uint64_t shots,
                      std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");

  const MeasurementBases bases = MeasurementBases::standard(cfg);
  std::array<SettingDistribution, 4> dist;
  for (int s = 0; s < 4; ++s) {
    dist[s] =
        setting_distribution(state, bases.alice[s >> 1], bases.bob[s & 1], rule);
  }

  std::array<std::uint64_t, 16> counts{};
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const std::uint64_t base = shot * 8;
    for (int s = 0; s < 4; ++s) {
      const double u1 = uniform01_at(seed, base + 2 * s);
      const int a = u1 < dist[s].alice_prob[0] ? 0 : 1;
      const double u2 = uniform01_at(seed, base + 2 * s + 1);
      const int b = u2 < dist[s].bob_p0[a] ? 0 : 1;
      ++counts[BehaviorBox::index(a, b, s >> 1, s & 1)];
    }
  }

  std::array<double, 16> cells{};
  std::array<double, 16> se{};
  const double inv = 1.0 / static_cast<double>(shots);
  for (int i = 0; i < 16; ++i) {
    cells[i] = static_cast<double>(counts[i]) * inv;
    se[i] = std::sqrt(cells[i] * (1.0 - cells[i]) * inv);
  }
  return SampledBox{BehaviorBox{cells}, se, shots};
}

}  // namespace nlbox
